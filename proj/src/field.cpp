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

#include "spectraff/field.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <stdexcept>
#include <utility>

#include "poly.hpp"

namespace spectraff {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint32_t> parse_digits(std::string_view text) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint32_t v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("bad element literal: '" + std::string(text) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join_digits(const std::vector<std::uint32_t>& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(d[i]);
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

FieldPtr build_field(std::uint32_t p, std::uint32_t r, const Caps& caps) {
  return std::make_shared<const FieldCtx>(p, r, caps);
}

FieldPtr build_field_of_order(std::uint32_t q, const Caps& caps) {
  if (q < 3) throw std::invalid_argument("field order must be an odd prime power");
  std::uint32_t p = 0;
  for (std::uint32_t f = 2; f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  std::uint32_t r = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) {
    throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  }
  return build_field(p, r, caps);
}

ExtPtr build_extension(FieldPtr base, std::uint32_t n, const Caps& caps) {
  return std::make_shared<const ExtCtx>(std::move(base), n, caps);
}

// ---------------------------------------------------------------- FieldCtx

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t r, const Caps& caps)
    : p_(p), r_(r) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (r == 0) throw std::invalid_argument("extension degree r must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    caps.require_field(q, "field F_" + std::to_string(p) + "^" + std::to_string(r));
  }
  q_ = static_cast<std::uint32_t>(q);

  digit_pow_.resize(r_ + 1);
  digit_pow_[0] = 1;
  for (std::uint32_t i = 1; i <= r_; ++i) digit_pow_[i] = digit_pow_[i - 1] * p_;

  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < r_; ++i) {
      const std::uint32_t d = (a / digit_pow_[i]) % p_;
      out += ((p_ - d) % p_) * digit_pow_[i];
    }
    neg_[a] = out;
  }

  std::function<FqElement(FqElement, FqElement)> raw_mul;
  std::shared_ptr<FieldCtx> prime;
  if (r_ == 1) {
    raw_mul = [p](FqElement a, FqElement b) {
      return FqElement{static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(a.code) * b.code) % p)};
    };
  } else {
    prime = std::make_shared<FieldCtx>(p, 1, caps);
    const detail::Poly m = detail::smallest_monic_irreducible(*prime, r_);
    detail::Poly mp = m;
    for (const auto& c : m) modulus_.push_back(c.code);
    raw_mul = [this, prime, mp](FqElement a, FqElement b) {
      auto to_poly = [this](FqElement x) {
        detail::Poly out;
        for (auto d : coeffs(x)) out.push_back(FqElement{d});
        detail::trim(out);
        return out;
      };
      const detail::Poly prod = detail::mulmod(*prime, to_poly(a), to_poly(b), mp);
      std::uint32_t code = 0;
      for (std::size_t i = 0; i < prod.size(); ++i) code += prod[i].code * digit_pow_[i];
      return FqElement{code};
    };
    if (q_ <= 1024) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (std::uint32_t a = 0; a < q_; ++a) {
        for (std::uint32_t b = 0; b < q_; ++b) {
          std::uint32_t out = 0;
          for (std::uint32_t i = 0; i < r_; ++i) {
            const std::uint32_t d = ((a / digit_pow_[i]) + (b / digit_pow_[i])) % p_;
            out += d * digit_pow_[i];
          }
          add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(out);
        }
      }
    }
  }

  auto raw_pow = [&](FqElement a, std::uint64_t e) {
    FqElement result{1};
    while (e > 0) {
      if (e & 1u) result = raw_mul(result, a);
      e >>= 1u;
      if (e > 0) a = raw_mul(a, a);
    }
    return result;
  };
  const auto factors = prime_factors(q_ - 1);
  bool found = false;
  for (std::uint32_t c = 1; c < q_ && !found; ++c) {
    bool primitive = true;
    for (auto f : factors) {
      if (raw_pow(FqElement{c}, (q_ - 1) / f).code == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      nu_ = FqElement{c};
      found = true;
    }
  }
  if (!found && q_ > 2) throw std::logic_error("no primitive element found");

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  FqElement x{1};
  for (std::uint32_t k = 0; k + 1 < q_; ++k) {
    exp_[k] = x.code;
    log_[x.code] = k;
    x = raw_mul(x, nu_);
  }
}

FqElement FieldCtx::element(std::uint32_t code) const {
  if (code >= q_) throw std::out_of_range("element code out of range");
  return FqElement{code};
}

FqElement FieldCtx::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return FqElement{static_cast<std::uint32_t>(m)};
}

std::vector<FqElement> FieldCtx::elements() const {
  std::vector<FqElement> out(q_);
  for (std::uint32_t a = 0; a < q_; ++a) out[a] = FqElement{a};
  return out;
}

std::vector<std::uint32_t> FieldCtx::coeffs(FqElement a) const {
  std::vector<std::uint32_t> out(r_);
  for (std::uint32_t i = 0; i < r_; ++i) out[i] = (a.code / digit_pow_[i]) % p_;
  return out;
}

FqElement FieldCtx::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != r_) throw std::invalid_argument("expected " + std::to_string(r_) + " coefficients");
  std::uint32_t code = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
    code += c[i] * digit_pow_[i];
  }
  return FqElement{code};
}

FqElement FieldCtx::add(FqElement a, FqElement b) const {
  if (r_ == 1) {
    const std::uint32_t s = a.code + b.code;
    return FqElement{s >= p_ ? s - p_ : s};
  }
  if (!add_table_.empty()) {
    return FqElement{add_table_[static_cast<std::size_t>(a.code) * q_ + b.code]};
  }
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    const std::uint32_t d = ((a.code / digit_pow_[i]) + (b.code / digit_pow_[i])) % p_;
    out += d * digit_pow_[i];
  }
  return FqElement{out};
}

FqElement FieldCtx::mul(FqElement a, FqElement b) const {
  if (a.code == 0 || b.code == 0) return FqElement{0};
  if (r_ == 1) {
    return FqElement{static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a.code) * b.code) % p_)};
  }
  std::uint32_t k = log_[a.code] + log_[b.code];
  if (k >= q_ - 1) k -= q_ - 1;
  return FqElement{exp_[k]};
}

FqElement FieldCtx::inv(FqElement a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t k = log_[a.code];
  return FqElement{exp_[k == 0 ? 0 : q_ - 1 - k]};
}

FqElement FieldCtx::pow(FqElement a, std::uint64_t e) const {
  FqElement result = one();
  while (e > 0) {
    if (e & 1u) result = mul(result, a);
    e >>= 1u;
    if (e > 0) a = mul(a, a);
  }
  return result;
}

bool FieldCtx::is_square(FqElement a) const {
  if (a.code == 0) return false;
  return pow(a, (q_ - 1) / 2) == one();
}

std::uint32_t FieldCtx::log(FqElement a) const {
  if (a.code == 0) throw std::domain_error("log of zero");
  return log_[a.code];
}

FqElement FieldCtx::nu_pow(std::int64_t k) const {
  const std::int64_t m = static_cast<std::int64_t>(q_) - 1;
  std::int64_t e = k % m;
  if (e < 0) e += m;
  return FqElement{exp_[static_cast<std::size_t>(e)]};
}

std::uint64_t FieldCtx::order(FqElement a) const {
  if (a.code == 0) throw std::domain_error("order of zero");
  std::uint64_t ord = q_ - 1;
  for (auto f : prime_factors(q_ - 1)) {
    while (ord % f == 0 && pow(a, ord / f) == one()) ord /= f;
  }
  return ord;
}

std::string FieldCtx::format(FqElement a) const { return join_digits(coeffs(a)); }

FqElement FieldCtx::parse(std::string_view text) const {
  const auto d = parse_digits(text);
  return from_coeffs(d);
}

// ------------------------------------------------------------------ ExtCtx

ExtCtx::ExtCtx(FieldPtr base, std::uint32_t n, const Caps& caps)
    : base_(std::move(base)), n_(n) {
  if (!base_) throw std::invalid_argument("null base field");
  if (n_ < 2) throw std::invalid_argument("extension degree n must be >= 2");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    size *= base_->q();
    caps.require_field(size, "extension of degree " + std::to_string(n_) +
                                 " over F_" + std::to_string(base_->q()));
  }
  size_ = static_cast<std::uint32_t>(size);
  modulus_ = detail::smallest_monic_irreducible(*base_, n_);
}

ExtElement ExtCtx::element(std::uint32_t code) const {
  if (code >= size_) throw std::out_of_range("element code out of range");
  return ExtElement{code};
}

std::optional<FqElement> ExtCtx::to_base(ExtElement x) const {
  if (x.code >= base_->q()) return std::nullopt;
  return FqElement{x.code};
}

std::vector<FqElement> ExtCtx::coeffs(ExtElement x) const {
  std::vector<FqElement> out(n_);
  std::uint32_t rest = x.code;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out[i] = FqElement{rest % base_->q()};
    rest /= base_->q();
  }
  return out;
}

ExtElement ExtCtx::from_coeffs(std::span<const FqElement> c) const {
  if (c.size() > n_) throw std::invalid_argument("too many coefficients");
  std::uint32_t code = 0;
  std::uint32_t scale = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].code >= base_->q()) throw std::invalid_argument("coefficient out of range");
    code += c[i].code * scale;
    scale *= base_->q();
  }
  return ExtElement{code};
}

ExtElement ExtCtx::add(ExtElement a, ExtElement b) const {
  const std::uint32_t q = base_->q();
  std::uint32_t ra = a.code, rb = b.code, code = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    code += base_->add(FqElement{ra % q}, FqElement{rb % q}).code * scale;
    ra /= q;
    rb /= q;
    scale *= q;
  }
  return ExtElement{code};
}

ExtElement ExtCtx::neg(ExtElement a) const {
  const std::uint32_t q = base_->q();
  std::uint32_t ra = a.code, code = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    code += base_->neg(FqElement{ra % q}).code * scale;
    ra /= q;
    scale *= q;
  }
  return ExtElement{code};
}

ExtElement ExtCtx::mul(ExtElement a, ExtElement b) const {
  if (a.code == 0 || b.code == 0) return zero();
  detail::Poly pa = coeffs(a);
  detail::Poly pb = coeffs(b);
  detail::trim(pa);
  detail::trim(pb);
  const detail::Poly prod = detail::mulmod(*base_, pa, pb, modulus_);
  return from_coeffs(prod);
}

ExtElement ExtCtx::pow(ExtElement a, std::uint64_t e) const {
  ExtElement result = one();
  while (e > 0) {
    if (e & 1u) result = mul(result, a);
    e >>= 1u;
    if (e > 0) a = mul(a, a);
  }
  return result;
}

ExtElement ExtCtx::inv(ExtElement a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero");
  return pow(a, static_cast<std::uint64_t>(size_) - 2);
}

ExtElement ExtCtx::frobenius(ExtElement x) const { return pow(x, base_->q()); }

FqElement ExtCtx::norm(ExtElement x) const {
  ExtElement acc = one();
  ExtElement conj = x;
  for (std::uint32_t i = 0; i < n_; ++i) {
    acc = mul(acc, conj);
    conj = frobenius(conj);
  }
  const auto down = to_base(acc);
  if (!down) throw std::logic_error("norm left the base field");
  return *down;
}

std::uint64_t ExtCtx::norm_fiber_size() const {
  return (static_cast<std::uint64_t>(size_) - 1) / (base_->q() - 1);
}

std::string ExtCtx::format(ExtElement x) const {
  std::vector<std::uint32_t> digits;
  for (auto c : coeffs(x)) {
    for (auto d : base_->coeffs(c)) digits.push_back(d);
  }
  return join_digits(digits);
}

ExtElement ExtCtx::parse(std::string_view text) const {
  const auto digits = parse_digits(text);
  const std::uint32_t r = base_->r();
  if (digits.size() != static_cast<std::size_t>(r) * n_) {
    throw std::invalid_argument("expected " + std::to_string(r * n_) + " digits");
  }
  std::vector<FqElement> c(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    c[i] = base_->from_coeffs(std::span<const std::uint32_t>(digits).subspan(i * r, r));
  }
  return from_coeffs(c);
}

// -------------------------------------------------------------- descriptor

nlohmann::json context_descriptor(const FieldCtx& field, const ExtCtx* ext) {
  nlohmann::json j;
  j["p"] = field.p();
  j["r"] = field.r();
  if (field.r() > 1) {
    j["modulus_coeffs"] = field.modulus();
  } else {
    j["modulus_coeffs"] = nullptr;
  }
  if (ext) {
    j["n"] = ext->n();
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : ext->modulus()) coeffs.push_back(field.coeffs(c));
    j["ext_modulus_coeffs"] = coeffs;
  } else {
    j["n"] = 1;
    j["ext_modulus_coeffs"] = nullptr;
  }
  return j;
}

BuiltContext context_from_descriptor(const nlohmann::json& desc, const Caps& caps) {
  BuiltContext out;
  out.field = build_field(desc.at("p").get<std::uint32_t>(),
                          desc.at("r").get<std::uint32_t>(), caps);
  const auto& mc = desc.at("modulus_coeffs");
  if (!mc.is_null() && mc.get<std::vector<std::uint32_t>>() != out.field->modulus()) {
    throw std::invalid_argument("descriptor modulus does not match the canonical modulus");
  }
  const std::uint32_t n = desc.value("n", 1u);
  if (n >= 2) {
    out.ext = build_extension(out.field, n, caps);
    const auto& ec = desc.at("ext_modulus_coeffs");
    if (!ec.is_null()) {
      std::vector<std::vector<std::uint32_t>> want;
      for (const auto& c : out.ext->modulus()) want.push_back(out.field->coeffs(c));
      if (ec.get<std::vector<std::vector<std::uint32_t>>>() != want) {
        throw std::invalid_argument("descriptor extension modulus does not match");
      }
    }
  }
  return out;
}

}  // namespace spectraff
