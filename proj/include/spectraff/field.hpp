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

#pragma once

// Exact arithmetic in F_q = F_p[t]/(m(t)) and in extensions F_{q^n} = F_q[x]/(M(x)).
//
// Elements are stored by their integer encoding: the base-p digit expansion
// of the polynomial-basis coefficients, lowest coefficient first. The same
// encoding fixes the element ordering used for vertex indexing and for the
// deterministic choice of the primitive element.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spectraff/caps.hpp"

namespace spectraff {

struct FqElement {
  std::uint32_t code = 0;
  friend auto operator<=>(const FqElement&, const FqElement&) = default;
};

struct ExtElement {
  std::uint32_t code = 0;
  friend auto operator<=>(const ExtElement&, const ExtElement&) = default;
};

class FieldCtx;
class ExtCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;
using ExtPtr = std::shared_ptr<const ExtCtx>;

bool is_prime(std::uint64_t n);

/// Builds F_{p^r} with the lexicographically smallest monic irreducible
/// modulus and the smallest primitive element. Throws std::invalid_argument
/// for even or composite p and CapExceeded above the field-size cap.
FieldPtr build_field(std::uint32_t p, std::uint32_t r, const Caps& caps = {});

/// Builds F_q for an odd prime power q.
FieldPtr build_field_of_order(std::uint32_t q, const Caps& caps = {});

/// Builds F_{q^n} over `base`, n >= 2, with the lexicographically smallest
/// monic irreducible modulus over F_q.
ExtPtr build_extension(FieldPtr base, std::uint32_t n, const Caps& caps = {});

class FieldCtx {
 public:
  FieldCtx(std::uint32_t p, std::uint32_t r, const Caps& caps);

  std::uint32_t p() const { return p_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t q() const { return q_; }

  /// Monic modulus, lowest coefficient first, length r + 1. Empty for r == 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FqElement nu() const { return nu_; }

  FqElement zero() const { return {0}; }
  FqElement one() const { return {1}; }
  FqElement element(std::uint32_t code) const;
  FqElement from_int(std::int64_t v) const;
  std::vector<FqElement> elements() const;

  std::vector<std::uint32_t> coeffs(FqElement a) const;
  FqElement from_coeffs(std::span<const std::uint32_t> c) const;

  FqElement add(FqElement a, FqElement b) const;
  FqElement sub(FqElement a, FqElement b) const { return add(a, neg(b)); }
  FqElement neg(FqElement a) const { return {neg_[a.code]}; }
  FqElement mul(FqElement a, FqElement b) const;
  FqElement inv(FqElement a) const;
  FqElement div(FqElement a, FqElement b) const { return mul(a, inv(b)); }
  FqElement pow(FqElement a, std::uint64_t e) const;

  /// Euler criterion; zero is not a square here.
  bool is_square(FqElement a) const;
  /// Discrete logarithm to base nu; a must be nonzero.
  std::uint32_t log(FqElement a) const;
  /// nu^k for any integer k.
  FqElement nu_pow(std::int64_t k) const;
  std::uint64_t order(FqElement a) const;

  /// Comma-separated base-p digits, low coefficient first.
  std::string format(FqElement a) const;
  FqElement parse(std::string_view text) const;

 private:
  FqElement slow_mul(FqElement a, FqElement b) const;

  std::uint32_t p_ = 0;
  std::uint32_t r_ = 1;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  FqElement nu_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> exp_;  // exp_[k] = nu^k, k < q - 1
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
  std::vector<std::uint16_t> add_table_;  // q*q entries when r > 1, q <= 1024
  std::vector<std::uint32_t> digit_pow_;  // p^i
};

class ExtCtx {
 public:
  ExtCtx(FieldPtr base, std::uint32_t n, const Caps& caps);

  const FieldCtx& base() const { return *base_; }
  const FieldPtr& base_ptr() const { return base_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t size() const { return size_; }

  /// Monic modulus over F_q, lowest coefficient first, length n + 1.
  const std::vector<FqElement>& modulus() const { return modulus_; }

  ExtElement zero() const { return {0}; }
  ExtElement one() const { return {1}; }
  ExtElement element(std::uint32_t code) const;
  ExtElement embed(FqElement c) const { return {c.code}; }
  std::optional<FqElement> to_base(ExtElement x) const;

  std::vector<FqElement> coeffs(ExtElement x) const;
  ExtElement from_coeffs(std::span<const FqElement> c) const;

  ExtElement add(ExtElement a, ExtElement b) const;
  ExtElement sub(ExtElement a, ExtElement b) const { return add(a, neg(b)); }
  ExtElement neg(ExtElement a) const;
  ExtElement mul(ExtElement a, ExtElement b) const;
  ExtElement inv(ExtElement a) const;
  ExtElement pow(ExtElement a, std::uint64_t e) const;

  /// sigma(x) = x^q.
  ExtElement frobenius(ExtElement x) const;
  /// N(x) = prod_{i<n} sigma^i(x), with N(0) = 0.
  FqElement norm(ExtElement x) const;
  /// (q^n - 1) / (q - 1).
  std::uint64_t norm_fiber_size() const;

  /// Flattened base-p digits of all n coefficients, low first.
  std::string format(ExtElement x) const;
  ExtElement parse(std::string_view text) const;

 private:
  FieldPtr base_;
  std::uint32_t n_ = 2;
  std::uint32_t size_ = 0;
  std::vector<FqElement> modulus_;
};

/// {p, r, modulus_coeffs, n, ext_modulus_coeffs}; `ext` may be null.
nlohmann::json context_descriptor(const FieldCtx& field, const ExtCtx* ext);

struct BuiltContext {
  FieldPtr field;
  ExtPtr ext;  // null when the descriptor has n <= 1
};

/// Rebuilds contexts from a descriptor, verifying that the recorded moduli
/// match the deterministic choice.
BuiltContext context_from_descriptor(const nlohmann::json& desc,
                                     const Caps& caps = {});

}  // namespace spectraff
