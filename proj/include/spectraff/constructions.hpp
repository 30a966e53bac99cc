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

// Deterministic builders for the norm, product, sum-product, Euclidean and
// non-Euclidean graph families, single-value and colored.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectraff/caps.hpp"
#include "spectraff/field.hpp"
#include "spectraff/forms.hpp"
#include "spectraff/graph.hpp"

namespace spectraff {

enum class Family { norm, product, sumproduct, euclidean, noneuclidean };
std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// Whether loops (pairs u == v satisfying the edge rule) are kept. Keeping
/// them makes the valency claims exact; stripping gives the simple graph.
enum class LoopMode { keep, strip };

struct FamilySpec {
  Family family = Family::norm;
  std::uint32_t p = 3;
  std::uint32_t r = 1;
  std::uint32_t n = 2;  // extension degree (norm)
  std::uint32_t d = 2;  // dimension (all other families)
  /// "identity" (dot product / sum of squares), "skew", or "matrix".
  std::string form = "identity";
  std::vector<std::vector<std::uint32_t>> matrix;  // element codes, when form == "matrix"
  std::optional<std::uint32_t> lambda;  // element code; empty means all colors
  LoopMode loops = LoopMode::keep;

  std::uint32_t q() const;
  nlohmann::json to_json() const;
  static FamilySpec from_json(const nlohmann::json& j);
  /// Short "family q=.. d=.. lambda=.." tag for headers and report rows.
  std::string tag() const;
};

Graph norm_graph(const ExtCtx& ext, FqElement lambda, LoopMode loops = LoopMode::keep,
                 const Caps& caps = {});
Graph product_graph(const BilinearForm& b, FqElement lambda, LoopMode loops = LoopMode::keep,
                    const Caps& caps = {});
Graph sumproduct_graph(const BilinearForm& b, FqElement lambda,
                       LoopMode loops = LoopMode::keep, const Caps& caps = {});
Graph euclidean_graph(const QuadraticForm& q, FqElement lambda, const Caps& caps = {});

/// Pairs of linearly dependent, distinct nonzero vectors (vertex i is the
/// vector with encoding i + 1, matching product_graph).
Graph linear_dependence_graph(const VectorSpace& space, const Caps& caps = {});
/// (a, b) ~ (c, b) with a != c on F_q x F_q^d (matching sumproduct_graph).
Graph same_fiber_graph(const VectorSpace& space, const Caps& caps = {});

/// Vertex index of (a, b) in the sum-product graph.
inline std::uint32_t sumproduct_index(std::uint32_t q, FqElement a, std::uint32_t b_code) {
  return a.code + q * b_code;
}

struct NonEuclideanScheme {
  /// Colors are relation indices 2 <= i <= (q-1)/2.
  ColoredGraph graph;
  /// One unit-sphere point per vertex (the smaller encoding of x, -x).
  std::vector<std::uint32_t> sphere_points;
  /// Canonical line representative per vertex; vertices are sorted by it.
  std::vector<std::uint32_t> line_reps;
  /// Full relation index per ordered pair (0 on the diagonal).
  std::vector<std::uint8_t> relation;
  std::uint32_t relation_count = 0;  // (q + 1) / 2
  std::uint32_t sphere_size = 0;
  bool odd_dimension = false;

  std::uint32_t n() const { return graph.n(); }
  std::uint8_t relation_of(std::uint32_t u, std::uint32_t v) const {
    return relation[static_cast<std::size_t>(u) * graph.n() + v];
  }
};

/// Omega = unit-sphere antipode pairs; each pair of distinct vertices gets
/// the relation fixed by the unordered value pair {Q(x+y), Q(x-y)}.
NonEuclideanScheme noneuclidean_scheme(const QuadraticForm& q, const Caps& caps = {});

ColoredGraph colored_norm(const ExtCtx& ext, const Caps& caps = {});
ColoredGraph colored_product(const BilinearForm& b, const Caps& caps = {});
ColoredGraph colored_sumproduct(const BilinearForm& b, const Caps& caps = {});
ColoredGraph colored_euclidean(const QuadraticForm& q, const Caps& caps = {});

/// A built family with its contexts, the graph (single value) or colored
/// graph (all values), the pair-value function behind the edge rule, and
/// the (n, d, lambda) parameters claimed for each single-value graph.
struct FamilyInstance {
  FamilySpec spec;
  FieldPtr field;
  ExtPtr ext;
  std::optional<VectorSpace> space;
  std::optional<QuadraticForm> quadratic;
  std::optional<BilinearForm> bilinear;

  std::optional<Graph> graph;
  std::optional<ColoredGraph> colored;
  std::optional<NonEuclideanScheme> scheme;

  /// Value whose equality with lambda defines adjacency (norm of the sum,
  /// bilinear value, sum-product defect, or Q of the difference). Not set
  /// for the non-Euclidean family.
  std::function<FqElement(std::uint32_t, std::uint32_t)> value;

  std::uint32_t n_vertices = 0;
  std::uint32_t d_claim = 0;
  Rational lambda_claim_sq;

  nlohmann::json params() const;
};

/// Builds the single-value graph when spec.lambda is set, else the colored
/// graph. For the non-Euclidean family spec.lambda selects a relation index.
/// With `with_graphs` false only the contexts, claims and value function are
/// filled in.
FamilyInstance build_family(const FamilySpec& spec, const Caps& caps = {},
                            bool with_graphs = true);

}  // namespace spectraff
