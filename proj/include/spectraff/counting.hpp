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
// Mixing-lemma checks and star / K_{s,t} / colored-pattern counting over
// bitset adjacency.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectraff/caps.hpp"
#include "spectraff/field.hpp"
#include "spectraff/graph.hpp"

namespace spectraff {

/// Sorted, duplicate-free vertex list plus its bitset.
class VertexSubset {
 public:
  VertexSubset() = default;
  VertexSubset(std::uint32_t n, std::vector<std::uint32_t> members);
  static VertexSubset all(std::uint32_t n);

  std::uint32_t universe() const { return mask_.size(); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::uint32_t v) const { return mask_.test(v); }
  const std::vector<std::uint32_t>& members() const { return members_; }
  std::span<const std::uint64_t> words() const { return mask_.words(); }

 private:
  std::vector<std::uint32_t> members_;
  VertexMask mask_;
};

/// Neighbours of v inside U.
inline std::uint32_t degree_into(const Graph& g, std::uint32_t v, const VertexSubset& u) {
  return and_count(g.row(v), u.words());
}

/// Ordered pairs (u, w) in B x C with u ~ w; a loop counts once when u in B and C.
std::uint64_t edge_count(const Graph& g, const VertexSubset& b, const VertexSubset& c);

/// One checked inequality. `observed` is the exact integer quantity,
/// `expected` the main term and `bound` the allowed deviation (or right-hand
/// side when the check is a plain inequality).
struct BoundCheck {
  std::uint64_t observed = 0;
  double expected = 0.0;
  double bound = 0.0;
  double deviation = 0.0;
  bool satisfied = false;
  bool trivial = false;  // empty subset, vacuous
};

/// |e(B,C) - d|B||C|/n| <= lambda sqrt(|B||C|) at the certified lambda.
/// Throws std::invalid_argument when the cert does not describe g.
BoundCheck mixing_check(const Graph& g, const SpectralCert& cert, const VertexSubset& b,
                        const VertexSubset& c);

/// sum_v (d_U(v) - d|U|/n)^2 < lambda^2 |U|, strict. `observed` holds the
/// sum scaled by n^2 (an integer); `deviation` the unscaled sum.
BoundCheck degree_variance(const Graph& g, const SpectralCert& cert, const VertexSubset& u);

/// Ordered triples (c1, b, c2) with b in B, c1, c2 in C, both adjacent.
std::uint64_t path2_count(const Graph& g, const VertexSubset& b, const VertexSubset& c);

/// |p2 - (d/n)^2 |B||C|^2| <= 2 (lambda d / n) |B|^{1/2} |C|^{3/2} + lambda^2 |C|.
BoundCheck path2_check(const Graph& g, const SpectralCert& cert, const VertexSubset& b,
                       const VertexSubset& c);

/// sum_{x in U1} d_{U2}(x)^t.
std::uint64_t star_sum(const Graph& g, const VertexSubset& u1, const VertexSubset& u2,
                       std::uint32_t t);

struct KstCount {
  std::uint32_t s = 0;
  std::uint32_t t = 0;
  /// sum over y in U2^t of S_y(U1)^s
  std::uint64_t y_side = 0;
  /// sum over z in U1^s of S_z(U2)^t
  std::uint64_t z_side = 0;
  /// sum over z in U1^{s-1}, y in S_z(U2)^t of S_y(U1); empty when over budget
  std::optional<std::uint64_t> nested;
  /// pairs of injective z- and y-tuples spanning a complete bipartite graph
  std::uint64_t injective = 0;
  /// (d/n)^{st} |U1|^s |U2|^t
  double expected = 0.0;
  /// error-term scale reported alongside (not asserted)
  double error_scale = 0.0;

  std::uint64_t value() const { return y_side; }
  bool agree() const { return y_side == z_side && (!nested || *nested == y_side); }
};

/// Ordered, possibly degenerate K_{s,t} in G[U1, U2], counted both ways.
/// Requires 1 <= s, t <= caps.max_tuple_len and tuple visits within budget.
KstCount kst_sum(const Graph& g, const VertexSubset& u1, const VertexSubset& u2, std::uint32_t s,
                 std::uint32_t t, const Caps& caps = {});

/// s = 2 specialization; error_scale is lambda^4 (n/d)^2 |U2|^{t-2}.
KstCount k2t_sum(const Graph& g, const SpectralCert& cert, const VertexSubset& u1,
                 const VertexSubset& u2, std::uint32_t t, const Caps& caps = {});

struct StarIndicator {
  std::uint64_t sum_s = 0;   // sum over y in U2^t of S^{r}_y(U1)
  std::uint64_t sum_i = 0;   // tuples with S >= 1
  std::uint64_t sum_s2 = 0;  // sum of S^2
  bool cauchy_schwarz = false;
};

/// Colored stars of type (r_1..r_t) with roots in U1 over U2^t. Throws
/// AssertionFailure if (sum S)^2 <= (sum I)(sum S^2) ever fails.
StarIndicator colored_star_indicator(const ColoredGraph& cg, const VertexSubset& u1,
                                     const VertexSubset& u2, std::span<const std::int32_t> colors,
                                     const Caps& caps = {});

struct CoverageCount {
  /// patterns up to relabeling of the K_t vertices
  std::uint64_t orbits = 0;
  /// distinct labeled color matrices (lambda_ij, i < j) over injective tuples
  std::uint64_t labeled = 0;
  /// |C|^{C(t,2)}, saturating at UINT64_MAX
  std::uint64_t max_patterns = 0;
};

/// Color patterns of K_t realized inside U (every pair colored).
CoverageCount kt_color_coverage(const ColoredGraph& cg, const VertexSubset& u, std::uint32_t t,
                                const Caps& caps = {});

struct PinnedSet {
  std::vector<std::int32_t> colors;  // sorted
  /// Whether the uncolored zero value occurs on {y} x U (direct evaluation);
  /// empty when no value function was supplied.
  std::optional<bool> zero_realized;
};

using PairValue = std::function<FqElement(std::uint32_t, std::uint32_t)>;

PinnedSet pinned_set(const ColoredGraph& cg, std::uint32_t y, const VertexSubset& u,
                     const PairValue& value = {});

}  // namespace spectraff
