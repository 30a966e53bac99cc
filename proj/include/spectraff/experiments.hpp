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
// Solvability, coverage, pinned-set, sum-product and mixing experiments
// producing ExperimentReport rows.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectraff/caps.hpp"
#include "spectraff/constructions.hpp"
#include "spectraff/counting.hpp"
#include "spectraff/report.hpp"
#include "spectraff/rng.hpp"

namespace spectraff {

// ----------------------------------------------------------- equations

enum class SystemKind { norm, bilinear, quadratic, sumproduct };
std::string to_string(SystemKind k);
SystemKind system_kind_from_string(const std::string& s);
/// norm -> norm, bilinear -> product, quadratic -> euclidean, sumproduct -> sumproduct
Family family_of(SystemKind k);

/// Index of the pair (i, j), i < j, in the row-major upper triangle of K_t.
std::uint32_t pair_slot(std::uint32_t t, std::uint32_t i, std::uint32_t j);

struct SystemSpec {
  SystemKind kind = SystemKind::quadratic;
  std::uint32_t t = 2;
  /// C(t,2) entries in pair_slot order; empty entries are free.
  std::vector<std::optional<std::uint32_t>> lambdas;
  FamilySpec ambient;

  nlohmann::json to_json() const;
  static SystemSpec from_json(const nlohmann::json& j);
};

/// Ordered t-tuples from E (repeats allowed) meeting every fixed equation
/// value(x_i, x_j) = lambda_ij. `inst` must come from spec.ambient.
std::uint64_t solve_count(const FamilyInstance& inst, const SystemSpec& spec,
                          const VertexSubset& e, const Caps& caps = {});

/// Pairs (x, y) in A x B with value(x, y) = lambda.
std::uint64_t solve_count_pair(const FamilyInstance& inst, FqElement lambda,
                               const VertexSubset& a, const VertexSubset& b);

/// Rows for a two-set equation: the count, plus the strict solvability
/// assertion when the size hypothesis holds strictly (norm: |A||B| > q^{n+2},
/// sum-product: |A||B| >= 2 q^{d+2}, bilinear: |A||B| >= q^{d+1}).
ExperimentReport equation_experiment(const FamilyInstance& inst, FqElement lambda,
                                     const VertexSubset& a, const VertexSubset& b,
                                     std::uint64_t seed);

// ------------------------------------------------------------ coverage

struct CoverageParams {
  FamilySpec family;  // lambda must be empty (colored graph)
  std::uint32_t t = 3;
  std::vector<std::uint32_t> sizes;
  std::uint32_t trials = 20;
  std::uint64_t seed = kDefaultSeed;
  /// Sample E from the unit sphere (Euclidean family only).
  bool sphere = false;
  unsigned jobs = 1;
};

/// |E| at which the solvability theorem for this family starts to apply
/// (report-only threshold).
std::optional<double> coverage_threshold(const FamilySpec& family, std::uint32_t t, bool sphere);

ExperimentReport coverage_experiment(const CoverageParams& params, const Caps& caps = {});

// -------------------------------------------------------------- pinned

struct PinnedParams {
  FamilySpec family;  // colored: norm, product or euclidean
  std::uint32_t set_size = 0;  // |E|, or |A| in norm mode
  std::optional<std::uint32_t> second_size;  // |B| in norm mode (default |A|)
  std::uint64_t seed = kDefaultSeed;
  /// Color pairs for the t = 2 Cauchy-Schwarz chain, when within budget.
  bool pair_chain = true;
};

/// Pins run over `pins`, pinned sets over `targets`.
ExperimentReport pinned_experiment(const FamilyInstance& inst, const VertexSubset& pins,
                                   const VertexSubset& targets, std::uint64_t seed,
                                   bool pair_chain = true, const Caps& caps = {});
ExperimentReport pinned_experiment(const PinnedParams& params, const Caps& caps = {});

// --------------------------------------------------------- sum-product

struct SumProductResult {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint64_t size = 0;          // |A|
  std::uint64_t product_size = 0;  // |A.A|
  std::uint64_t sum_size = 0;      // |dA|
  /// |A|^{2d-1} <= P/q + sqrt(q^d P), P = |A|^d |A.A|^{d-1} |dA|, exact
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  /// |A.A|^{d-1}|dA| against min(q|A|^{d-1}, |A|^{3d-2}/q^{d-1})
  double growth = 0.0;
  double growth_floor = 0.0;
  /// e(E_A, F_A) in the sum-product graph of dimension d-1, lambda = 0,
  /// when |E_A||F_A| is small enough to enumerate.
  std::optional<std::uint64_t> edges;
  std::optional<bool> edges_lower;  // e >= |A|^{2d-1}
  std::optional<bool> edges_upper;  // e <= |E||F|/q + sqrt(2 q^{d-1} |E||F|)
};

/// A holds element codes of F_q; 0 must not be in A and d >= 2.
SumProductResult sumproduct_check(const FieldCtx& field, const std::vector<FqElement>& a,
                                  std::uint32_t d, std::uint64_t edge_budget = 20'000'000);

ExperimentReport sumproduct_rows(const SumProductResult& r, std::uint64_t seed);

/// `count` random subsets A of F_q^* (uniform size in [1, q-1]).
ExperimentReport sumproduct_experiment(std::uint32_t q, std::uint32_t d, std::uint32_t count,
                                       std::uint64_t seed, const Caps& caps = {});

// -------------------------------------------------------------- mixing

struct MixingParams {
  std::vector<FamilySpec> families;  // each with lambda set
  std::uint64_t seed = kDefaultSeed;
  std::uint32_t pairs = 200;
  std::uint32_t kst_pairs = 50;
  std::uint32_t kst_max_size = 16;
  /// Multiplies the claimed lambda (0.5 checks that wrong claims fail).
  double claim_scale = 1.0;
  /// Emit one row per subset pair instead of one aggregate row per check.
  bool per_pair_rows = false;
  unsigned jobs = 1;
};

/// Claimed lambda^2, scaled by claim_scale^2 (exact when the scale is a
/// ratio of small integers).
Rational scaled_claim(const Rational& lambda_sq, double claim_scale);

ExperimentReport mixing_grid(const MixingParams& params, const Caps& caps = {});

/// Mixing / degree-variance / path / K_{s,t} rows for one certified graph.
ExperimentReport mixing_rows(const Graph& g, const SpectralCert& cert, const std::string& family,
                             const nlohmann::json& params, const MixingParams& mp,
                             std::uint64_t seed, const Caps& caps = {});

/// Rows for a certificate (degree and second-eigenvalue checks).
ExperimentReport certificate_rows(const SpectralCert& cert, std::uint64_t seed);

}  // namespace spectraff
