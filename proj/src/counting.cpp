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

#include "spectraff/counting.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

namespace spectraff {

namespace {

using boost::multiprecision::cpp_int;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw CapExceeded("count overflows 64 bits");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw CapExceeded("count overflows 64 bits");
  return out;
}

std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e--) out = checked_mul(out, b);
  return out;
}

std::uint64_t saturating_pow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e--) {
    if (__builtin_mul_overflow(out, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  }
  return out;
}

std::uint64_t falling(std::uint64_t x, std::uint32_t k) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (x < i) return 0;
    out = checked_mul(out, x - i);
  }
  return out;
}

std::uint64_t to_u64(const cpp_int& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(v);
}

void require_cert(const Graph& g, const SpectralCert& cert) {
  if (cert.n != g.n()) {
    throw std::invalid_argument("stale certificate: n = " + std::to_string(cert.n) +
                                " but graph has " + std::to_string(g.n()) + " vertices");
  }
  if (!cert.satisfied) throw std::invalid_argument("certificate is not satisfied");
  const auto deg = g.regular_degree();
  if (!deg || *deg != cert.d_claim) {
    throw std::invalid_argument("stale certificate: graph is not " + std::to_string(cert.d_claim) +
                                "-regular");
  }
}

// lambda^2 of the certificate as num/den; falls back to a double when no
// exact value was recorded.
struct LambdaSq {
  std::optional<Rational> exact;
  double value = 0.0;
};

LambdaSq lambda_sq(const SpectralCert& cert) {
  LambdaSq out;
  out.exact = cert.lambda_claim_sq;
  out.value = out.exact ? out.exact->value() : cert.lambda_claim * cert.lambda_claim;
  return out;
}

double mean_degree(const Graph& g) {
  if (g.n() == 0) return 0.0;
  if (auto d = g.regular_degree()) return *d;
  std::uint64_t total = 0;
  for (std::uint32_t v = 0; v < g.n(); ++v) total += g.degree(v);
  return static_cast<double>(total) / g.n();
}

void check_same_universe(const Graph& g, const VertexSubset& u) {
  if (u.universe() != g.n()) throw std::invalid_argument("subset universe does not match graph");
}

// Enumerates pool^len (or injective tuples) keeping the running AND of
// `base` with the rows of the chosen vertices; calls f(popcount) at full
// length.
template <class RowOf, class F>
void for_each_tuple(RowOf&& row_of, std::span<const std::uint32_t> pool,
                    std::span<const std::uint64_t> base, std::uint32_t len, bool injective, F&& f) {
  const std::size_t words = base.size();
  std::vector<std::vector<std::uint64_t>> masks(len + 1, std::vector<std::uint64_t>(words));
  std::copy(base.begin(), base.end(), masks[0].begin());
  std::vector<std::size_t> idx(len, 0);
  if (len == 0) {
    f(and_count(base, base));
    return;
  }
  if (pool.empty()) return;
  std::uint32_t depth = 0;
  idx[0] = 0;
  while (true) {
    if (idx[depth] == pool.size()) {
      if (depth == 0) return;
      --depth;
      ++idx[depth];
      continue;
    }
    if (injective) {
      bool used = false;
      for (std::uint32_t k = 0; k < depth; ++k) used |= idx[k] == idx[depth];
      if (used) {
        ++idx[depth];
        continue;
      }
    }
    const auto row = row_of(pool[idx[depth]]);
    auto& next = masks[depth + 1];
    const auto& cur = masks[depth];
    for (std::size_t w = 0; w < words; ++w) next[w] = cur[w] & row[w];
    if (depth + 1 == len) {
      std::uint32_t c = 0;
      for (auto w : next) c += static_cast<std::uint32_t>(std::popcount(w));
      f(c);
      ++idx[depth];
    } else {
      ++depth;
      idx[depth] = 0;
    }
  }
}

// sum over pool^len of popcount(base & rows)^power
std::uint64_t tuple_power_sum(const Graph& g, std::span<const std::uint32_t> pool,
                              std::span<const std::uint64_t> base, std::uint32_t len,
                              std::uint32_t power) {
  std::uint64_t total = 0;
  for_each_tuple([&](std::uint32_t v) { return g.row(v); }, pool, base, len, false,
                 [&](std::uint32_t c) { total = checked_add(total, checked_pow(c, power)); });
  return total;
}

std::vector<std::uint32_t> mask_members(std::span<const std::uint64_t> words) {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- subsets

VertexSubset::VertexSubset(std::uint32_t n, std::vector<std::uint32_t> members)
    : members_(std::move(members)), mask_(n) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto v : members_) {
    if (v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " outside 0.." + std::to_string(n));
    mask_.set(v);
  }
}

VertexSubset VertexSubset::all(std::uint32_t n) {
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 0u);
  return VertexSubset(n, std::move(m));
}

// ------------------------------------------------------------ edge counts

std::uint64_t edge_count(const Graph& g, const VertexSubset& b, const VertexSubset& c) {
  check_same_universe(g, b);
  check_same_universe(g, c);
  std::uint64_t total = 0;
  for (auto u : b.members()) total += degree_into(g, u, c);
  return total;
}

BoundCheck mixing_check(const Graph& g, const SpectralCert& cert, const VertexSubset& b,
                        const VertexSubset& c) {
  require_cert(g, cert);
  BoundCheck out;
  out.observed = edge_count(g, b, c);
  const std::uint64_t n = g.n(), d = cert.d_claim, nb = b.size(), nc = c.size();
  const auto lsq = lambda_sq(cert);
  out.expected = static_cast<double>(d) * nb * nc / n;
  out.bound = std::sqrt(lsq.value * nb * nc);
  out.deviation = std::abs(static_cast<double>(out.observed) - out.expected);
  out.trivial = nb == 0 || nc == 0;
  // (n e - d|B||C|)^2 <= lambda^2 n^2 |B||C|
  const cpp_int diff = cpp_int(n) * out.observed - cpp_int(d) * nb * nc;
  if (lsq.exact) {
    out.satisfied = cpp_int(lsq.exact->den) * diff * diff <=
                    cpp_int(lsq.exact->num) * n * n * nb * nc;
  } else {
    out.satisfied = out.deviation <= out.bound + 1e-9 * std::max(1.0, out.bound);
  }
  return out;
}

BoundCheck degree_variance(const Graph& g, const SpectralCert& cert, const VertexSubset& u) {
  require_cert(g, cert);
  check_same_universe(g, u);
  BoundCheck out;
  const std::uint64_t n = g.n(), d = cert.d_claim, nu = u.size();
  const auto lsq = lambda_sq(cert);
  out.bound = lsq.value * nu;
  if (nu == 0) {
    out.trivial = true;
    out.satisfied = true;
    return out;
  }
  // sum (n d_U(v) - d|U|)^2; each term is below 2^64 for n < 2^16
  unsigned __int128 acc = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto term = static_cast<__int128>(n) * degree_into(g, v, u) - static_cast<__int128>(d) * nu;
    acc += static_cast<unsigned __int128>(term * term);
  }
  const cpp_int scaled = (cpp_int(static_cast<std::uint64_t>(acc >> 64)) << 64) +
                         static_cast<std::uint64_t>(acc);
  out.observed = to_u64(scaled);
  out.deviation = static_cast<double>(scaled) / (static_cast<double>(n) * n);
  if (lsq.exact) {
    out.satisfied = cpp_int(lsq.exact->den) * scaled < cpp_int(lsq.exact->num) * nu * n * n;
  } else {
    out.satisfied = out.deviation < out.bound;
  }
  return out;
}

std::uint64_t path2_count(const Graph& g, const VertexSubset& b, const VertexSubset& c) {
  check_same_universe(g, b);
  check_same_universe(g, c);
  std::uint64_t total = 0;
  for (auto v : b.members()) {
    const std::uint64_t k = degree_into(g, v, c);
    total = checked_add(total, k * k);
  }
  return total;
}

BoundCheck path2_check(const Graph& g, const SpectralCert& cert, const VertexSubset& b,
                       const VertexSubset& c) {
  require_cert(g, cert);
  BoundCheck out;
  out.observed = path2_count(g, b, c);
  const double n = g.n(), d = cert.d_claim, nb = b.size(), nc = c.size();
  const auto lsq = lambda_sq(cert);
  const double lambda = std::sqrt(lsq.value);
  out.expected = (d / n) * (d / n) * nb * nc * nc;
  out.bound = 2.0 * (lambda * d / n) * std::sqrt(nb) * std::pow(nc, 1.5) + lsq.value * nc;
  out.deviation = std::abs(static_cast<double>(out.observed) - out.expected);
  out.trivial = nb == 0 || nc == 0;
  out.satisfied = out.deviation <= out.bound + 1e-9 * std::max(1.0, out.bound);
  return out;
}

// ------------------------------------------------------------ star / K_st

std::uint64_t star_sum(const Graph& g, const VertexSubset& u1, const VertexSubset& u2,
                       std::uint32_t t) {
  if (t < 1) throw std::invalid_argument("star size t must be >= 1");
  check_same_universe(g, u1);
  check_same_universe(g, u2);
  std::uint64_t total = 0;
  for (auto x : u1.members()) total = checked_add(total, checked_pow(degree_into(g, x, u2), t));
  return total;
}

KstCount kst_sum(const Graph& g, const VertexSubset& u1, const VertexSubset& u2, std::uint32_t s,
                 std::uint32_t t, const Caps& caps) {
  if (s < 1 || t < 1) throw std::invalid_argument("K_{s,t} needs s, t >= 1");
  if (s > caps.max_tuple_len || t > caps.max_tuple_len) {
    throw CapExceeded("K_{s,t} with s or t above " + std::to_string(caps.max_tuple_len));
  }
  check_same_universe(g, u1);
  check_same_universe(g, u2);
  const std::uint64_t y_tuples = saturating_pow(u2.size(), t);
  const std::uint64_t z_tuples = saturating_pow(u1.size(), s);
  caps.require_tuples(y_tuples > std::numeric_limits<std::uint64_t>::max() - z_tuples
                          ? std::numeric_limits<std::uint64_t>::max()
                          : y_tuples + z_tuples,
                      "K_{" + std::to_string(s) + "," + std::to_string(t) + "} count");

  KstCount out;
  out.s = s;
  out.t = t;
  out.y_side = tuple_power_sum(g, u2.members(), u1.words(), t, s);
  out.z_side = tuple_power_sum(g, u1.members(), u2.words(), s, t);

  // nested route: fix z in U1^{s-1}, then y over S_z(U2)^t
  const std::uint64_t nested_visits =
      checked_mul(saturating_pow(u1.size(), s - 1), saturating_pow(u2.size(), t));
  if (nested_visits <= caps.tuple_budget) {
    std::uint64_t total = 0;
    auto inner = [&](std::span<const std::uint64_t> common) {
      const auto pool = mask_members(common);
      total = checked_add(total, tuple_power_sum(g, pool, u1.words(), t, 1));
    };
    if (s == 1) {
      inner(u2.words());
    } else {
      // collect common neighbourhoods of each z tuple, then recurse
      const std::size_t words = u2.words().size();
      std::vector<std::vector<std::uint64_t>> masks(s, std::vector<std::uint64_t>(words));
      std::copy(u2.words().begin(), u2.words().end(), masks[0].begin());
      std::vector<std::size_t> idx(s - 1, 0);
      const auto& pool = u1.members();
      if (!pool.empty()) {
        std::uint32_t depth = 0;
        while (true) {
          if (idx[depth] == pool.size()) {
            if (depth == 0) break;
            --depth;
            ++idx[depth];
            continue;
          }
          const auto row = g.row(pool[idx[depth]]);
          for (std::size_t w = 0; w < words; ++w) masks[depth + 1][w] = masks[depth][w] & row[w];
          if (depth + 1 == s - 1) {
            inner(masks[depth + 1]);
            ++idx[depth];
          } else {
            ++depth;
            idx[depth] = 0;
          }
        }
      }
    }
    out.nested = total;
  }

  for_each_tuple([&](std::uint32_t v) { return g.row(v); }, u2.members(), u1.words(), t, true,
                 [&](std::uint32_t c) { out.injective = checked_add(out.injective, falling(c, s)); });

  const double density = g.n() == 0 ? 0.0 : mean_degree(g) / g.n();
  out.expected = std::pow(density, static_cast<double>(s) * t) *
                 std::pow(static_cast<double>(u1.size()), s) *
                 std::pow(static_cast<double>(u2.size()), t);
  return out;
}

KstCount k2t_sum(const Graph& g, const SpectralCert& cert, const VertexSubset& u1,
                 const VertexSubset& u2, std::uint32_t t, const Caps& caps) {
  require_cert(g, cert);
  KstCount out = kst_sum(g, u1, u2, 2, t, caps);
  const double lsq = lambda_sq(cert).value;
  const double ratio = static_cast<double>(g.n()) / cert.d_claim;
  out.error_scale = lsq * lsq * ratio * ratio * std::pow(static_cast<double>(u2.size()), static_cast<double>(t) - 2.0);
  return out;
}

// ------------------------------------------------------------- colored

StarIndicator colored_star_indicator(const ColoredGraph& cg, const VertexSubset& u1,
                                     const VertexSubset& u2, std::span<const std::int32_t> colors,
                                     const Caps& caps) {
  const auto t = static_cast<std::uint32_t>(colors.size());
  if (t < 1 || t > 3) throw std::invalid_argument("colored stars need 1 <= t <= 3");
  for (auto c : colors) {
    if (!cg.has_color(c)) throw std::invalid_argument("unknown color " + std::to_string(c));
  }
  if (u1.universe() != cg.n() || u2.universe() != cg.n()) {
    throw std::invalid_argument("subset universe does not match graph");
  }
  caps.require_tuples(saturating_pow(u2.size(), t), "colored star count");

  StarIndicator out;
  std::vector<const Graph*> classes;
  for (auto c : colors) classes.push_back(&cg.class_graph(c));
  const auto& pool = u2.members();
  const std::size_t words = u1.words().size();
  std::vector<std::vector<std::uint64_t>> masks(t + 1, std::vector<std::uint64_t>(words));
  std::copy(u1.words().begin(), u1.words().end(), masks[0].begin());
  std::vector<std::size_t> idx(t, 0);
  if (!pool.empty()) {
    std::uint32_t depth = 0;
    while (true) {
      if (idx[depth] == pool.size()) {
        if (depth == 0) break;
        --depth;
        ++idx[depth];
        continue;
      }
      const auto row = classes[depth]->row(pool[idx[depth]]);
      for (std::size_t w = 0; w < words; ++w) masks[depth + 1][w] = masks[depth][w] & row[w];
      if (depth + 1 == t) {
        std::uint64_t sz = 0;
        for (auto w : masks[t]) sz += static_cast<std::uint64_t>(std::popcount(w));
        out.sum_s = checked_add(out.sum_s, sz);
        out.sum_s2 = checked_add(out.sum_s2, sz * sz);
        out.sum_i += sz > 0;
        ++idx[depth];
      } else {
        ++depth;
        idx[depth] = 0;
      }
    }
  }
  const unsigned __int128 lhs = static_cast<unsigned __int128>(out.sum_s) * out.sum_s;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(out.sum_i) * out.sum_s2;
  out.cauchy_schwarz = lhs <= rhs;
  if (!out.cauchy_schwarz) {
    throw AssertionFailure("Cauchy-Schwarz chain failed: (sum S)^2 > (sum I)(sum S^2)");
  }
  return out;
}

CoverageCount kt_color_coverage(const ColoredGraph& cg, const VertexSubset& u, std::uint32_t t,
                                const Caps& caps) {
  if (t < 2 || t > 4) throw std::invalid_argument("K_t coverage needs t in {2, 3, 4}");
  if (u.universe() != cg.n()) throw std::invalid_argument("subset universe does not match graph");
  caps.require_tuples(saturating_pow(u.size(), t), "K_" + std::to_string(t) + " coverage");

  const auto& colors = cg.colors();
  const auto ncolors = static_cast<std::uint64_t>(colors.size());
  const std::uint32_t slots = t * (t - 1) / 2;
  CoverageCount out;
  out.max_patterns = saturating_pow(ncolors, slots);
  if (ncolors == 0) return out;

  // color index table restricted to U
  const auto& members = u.members();
  const std::size_t m = members.size();
  std::vector<std::int32_t> slot_of;
  {
    const auto top = *std::max_element(colors.begin(), colors.end());
    slot_of.assign(static_cast<std::size_t>(std::max(top, 0)) + 1, -1);
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (colors[i] >= 0) slot_of[colors[i]] = static_cast<std::int32_t>(i);
    }
  }
  std::vector<std::int32_t> local(m * m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto c = cg.color(members[i], members[j]);
      if (c >= 0) local[i * m + j] = slot_of[c];
    }
  }

  std::vector<std::array<std::uint8_t, 2>> edge_slots;
  for (std::uint8_t a = 0; a < t; ++a) {
    for (std::uint8_t b = a + 1; b < t; ++b) edge_slots.push_back({a, b});
  }
  std::vector<std::vector<std::uint8_t>> perms;
  {
    std::vector<std::uint8_t> p(t);
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  const bool dense = out.max_patterns <= (std::uint64_t{1} << 28);
  std::vector<bool> seen_labeled, seen_orbit;
  std::unordered_set<std::uint64_t> set_labeled, set_orbit;
  if (dense) {
    seen_labeled.assign(out.max_patterns, false);
    seen_orbit.assign(out.max_patterns, false);
  }
  auto insert = [&](std::vector<bool>& bits, std::unordered_set<std::uint64_t>& set,
                    std::uint64_t code, std::uint64_t& counter) {
    if (dense) {
      if (!bits[code]) {
        bits[code] = true;
        ++counter;
      }
    } else if (set.insert(code).second) {
      ++counter;
    }
  };

  std::vector<std::size_t> pick(t);
  auto visit = [&]() {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& p : perms) {
      std::uint64_t code = 0;
      for (const auto& e : edge_slots) {
        code = code * ncolors + static_cast<std::uint64_t>(local[pick[p[e[0]]] * m + pick[p[e[1]]]]);
      }
      insert(seen_labeled, set_labeled, code, out.labeled);
      best = std::min(best, code);
    }
    insert(seen_orbit, set_orbit, best, out.orbits);
  };

  // combinations pick[0] < ... < pick[t-1] with every pair colored
  auto recurse = [&](auto&& self, std::uint32_t depth, std::size_t start) -> void {
    if (depth == t) {
      visit();
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      bool ok = true;
      for (std::uint32_t k = 0; k < depth && ok; ++k) ok = local[pick[k] * m + i] >= 0;
      if (!ok) continue;
      pick[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

PinnedSet pinned_set(const ColoredGraph& cg, std::uint32_t y, const VertexSubset& u,
                     const PairValue& value) {
  if (y >= cg.n()) throw std::invalid_argument("pin outside vertex range");
  if (u.universe() != cg.n()) throw std::invalid_argument("subset universe does not match graph");
  PinnedSet out;
  std::vector<bool> present(cg.colors().empty() ? 0 : static_cast<std::size_t>(*std::max_element(cg.colors().begin(), cg.colors().end())) + 1, false);
  bool zero = false;
  for (auto v : u.members()) {
    const auto c = cg.color(y, v);
    if (c >= 0) present[c] = true;
    if (value && value(y, v).code == 0) zero = true;
  }
  for (auto c : cg.colors()) {
    if (present[c]) out.colors.push_back(c);
  }
  std::sort(out.colors.begin(), out.colors.end());
  if (value) out.zero_realized = zero;
  return out;
}

}  // namespace spectraff
