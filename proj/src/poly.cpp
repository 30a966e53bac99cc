// Copyright 2026 The spectraff Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "poly.hpp"

#include <stdexcept>
#include <utility>

namespace spectraff::detail {

void trim(Poly& a) {
  while (!a.empty() && a.back().code == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[static_cast<std::size_t>(i)].code != 0) return i;
  }
  return -1;
}

Poly sub(const FieldCtx& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.sub(out[i], b[i]);
  trim(out);
  return out;
}

Poly mul(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].code == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
  }
  trim(out);
  return out;
}

Poly mod(const FieldCtx& f, Poly a, const Poly& m) {
  const int dm = degree(m);
  if (dm < 0) throw std::domain_error("polynomial division by zero");
  const FqElement lead_inv = f.inv(m[static_cast<std::size_t>(dm)]);
  trim(a);
  while (degree(a) >= dm) {
    const int da = degree(a);
    const FqElement c = f.mul(a[static_cast<std::size_t>(da)], lead_inv);
    const std::size_t shift = static_cast<std::size_t>(da - dm);
    for (int i = 0; i <= dm; ++i) {
      auto& slot = a[shift + static_cast<std::size_t>(i)];
      slot = f.sub(slot, f.mul(c, m[static_cast<std::size_t>(i)]));
    }
    trim(a);
  }
  return a;
}

Poly mulmod(const FieldCtx& f, const Poly& a, const Poly& b, const Poly& m) {
  return mod(f, mul(f, a, b), m);
}

Poly powmod(const FieldCtx& f, Poly a, std::uint64_t e, const Poly& m) {
  Poly result{f.one()};
  result = mod(f, result, m);
  a = mod(f, std::move(a), m);
  while (e > 0) {
    if (e & 1u) result = mulmod(f, result, a, m);
    e >>= 1u;
    if (e > 0) a = mulmod(f, a, a, m);
  }
  return result;
}

Poly gcd(const FieldCtx& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const FqElement lead_inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, lead_inv);
  }
  return a;
}

bool is_irreducible(const FieldCtx& f, const Poly& poly) {
  const int deg = degree(poly);
  if (deg < 1) return false;
  if (deg == 1) return true;
  const Poly x{f.zero(), f.one()};
  Poly h = x;
  for (int i = 1; i <= deg / 2; ++i) {
    h = powmod(f, h, f.q(), poly);
    const Poly g = gcd(f, sub(f, h, x), poly);
    if (degree(g) >= 1) return false;
  }
  return true;
}

Poly smallest_monic_irreducible(const FieldCtx& f, std::uint32_t deg) {
  if (deg == 0) throw std::invalid_argument("degree must be positive");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= f.q();
  Poly candidate(deg + 1, f.zero());
  candidate[deg] = f.one();
  for (std::uint64_t k = 0; k < count; ++k) {
    // c_0 is the most significant digit of k
    std::uint64_t rest = k;
    for (std::uint32_t j = deg; j-- > 0;) {
      candidate[j] = FqElement{static_cast<std::uint32_t>(rest % f.q())};
      rest /= f.q();
    }
    if (is_irreducible(f, candidate)) return candidate;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace spectraff::detail
