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

// Dense univariate polynomials over a FieldCtx, lowest coefficient first.
// Used to pick moduli for F_{p^r} and F_{q^n}.

#include <cstdint>
#include <vector>

#include "spectraff/field.hpp"

namespace spectraff::detail {

using Poly = std::vector<FqElement>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial
Poly sub(const FieldCtx& f, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& f, const Poly& a, const Poly& b);
Poly mod(const FieldCtx& f, Poly a, const Poly& m);
Poly mulmod(const FieldCtx& f, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const FieldCtx& f, Poly a, std::uint64_t e, const Poly& m);
Poly gcd(const FieldCtx& f, Poly a, Poly b);

/// Ben-Or test: f is irreducible iff gcd(x^{q^i} - x, f) = 1 for i <= deg/2.
bool is_irreducible(const FieldCtx& f, const Poly& poly);

/// Smallest monic irreducible of the given degree, comparing the non-leading
/// coefficient vectors lexicographically from the constant term upward.
Poly smallest_monic_irreducible(const FieldCtx& f, std::uint32_t deg);

}  // namespace spectraff::detail
