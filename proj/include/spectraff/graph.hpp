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

// Dense graph storage with loops, spectra, and (n, d, lambda) certificates.

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectraff/caps.hpp"

namespace spectraff {

/// Exact rational p/q with q > 0, used for lambda^2 claims.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Fixed-size bitset over vertex indices.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::uint32_t size() const { return n_; }
  void set(std::uint32_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  bool test(std::uint32_t v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::uint32_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::uint32_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// Symmetric 0/1 adjacency over vertices 0..n-1; a loop sets the diagonal bit
/// and adds one to the degree.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::uint32_t n, std::string name = {});

  std::uint32_t n() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  void add_edge(std::uint32_t u, std::uint32_t v);
  bool adjacent(std::uint32_t u, std::uint32_t v) const {
    return (rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  std::span<const std::uint64_t> row(std::uint32_t v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::uint32_t words_per_row() const { return static_cast<std::uint32_t>(words_); }

  std::uint32_t degree(std::uint32_t v) const;
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;
  std::uint64_t loop_count() const;
  /// Unordered edges including loops.
  std::uint64_t edge_count() const;
  /// Common degree if every row sum agrees.
  std::optional<std::uint32_t> regular_degree() const;
  bool connected() const;

  /// Human-readable vertex labels (field elements, vectors, lines).
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  /// Same graph with the diagonal cleared.
  Graph without_loops() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::uint32_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::string> labels_;
  std::string name_;
};

/// Edge coloring over unordered pairs (loops included). Colors are small
/// integers with display labels; -1 marks an uncolored pair.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  ColoredGraph(std::uint32_t n, std::vector<std::int32_t> colors,
               std::vector<std::string> color_labels, std::string name = {});

  std::uint32_t n() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<std::int32_t>& colors() const { return colors_; }
  const std::string& color_label(std::int32_t color) const;
  bool has_color(std::int32_t color) const;

  void set_color(std::uint32_t u, std::uint32_t v, std::int32_t color);
  std::int32_t color(std::uint32_t u, std::uint32_t v) const {
    return cells_[static_cast<std::size_t>(u) * n_ + v];
  }

  /// Builds the per-color adjacency bitsets; call once all colors are set.
  void finalize();
  /// Adjacency of one color class; requires finalize().
  const Graph& class_graph(std::int32_t color) const;
  std::uint64_t colored_pair_count() const;

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

 private:
  std::size_t color_slot(std::int32_t color) const;

  std::uint32_t n_ = 0;
  std::vector<std::int32_t> colors_;
  std::vector<std::string> color_labels_;
  std::vector<std::int16_t> cells_;
  std::vector<Graph> classes_;
  std::vector<std::string> labels_;
  std::string name_;
};

/// Subgraph on exactly the edges of `color`. Throws for unknown colors.
Graph color_class(const ColoredGraph& cg, std::int32_t color);

/// Full adjacency spectrum, descending. Throws CapExceeded above the vertex cap.
std::vector<double> spectrum(const Graph& g, const Caps& caps = {});

/// max(lambda_2, -lambda_n) of a descending spectrum.
double second_eigenvalue(const std::vector<double>& descending);

inline constexpr double kSpectralTol = 1e-6;

struct SpectralCert {
  std::string family;
  nlohmann::json params;
  std::uint32_t n = 0;
  std::uint32_t d_claim = 0;
  double lambda_claim = 0.0;
  std::optional<Rational> lambda_claim_sq;
  double lambda_top = 0.0;
  double lambda_measured = 0.0;
  bool regular = false;
  bool top_matches = false;
  bool satisfied = false;
  std::vector<double> spectrum;  // descending

  nlohmann::json to_json() const;
};

/// Checks regularity, lambda_1 == d_claim and lambda(G) <= lambda_claim (all
/// within kSpectralTol). Never throws on failure; the cert records it.
SpectralCert certify_ndl(const Graph& g, std::uint32_t d_claim, double lambda_claim,
                         const Caps& caps = {});
SpectralCert certify_ndl(const Graph& g, std::uint32_t d_claim, Rational lambda_claim_sq,
                         const Caps& caps = {});
/// Certifies against an already computed descending spectrum.
SpectralCert certify_with_spectrum(const Graph& g, std::vector<double> spectrum,
                                   std::uint32_t d_claim, double lambda_claim);

struct SquareViolation {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

struct SquareIdentityResult {
  bool holds = true;
  std::optional<SquareViolation> first_violation;
  std::uint64_t violations = 0;
};

/// Integer-exact test of A^2 = cJ*J + cI*I - cE*E.
SquareIdentityResult check_square_identity(const Graph& g, std::int64_t cJ, std::int64_t cI,
                                           const Graph& e_graph, std::int64_t cE = 1);

/// Edge list: a '#' comment line naming the construction, a "u,v[,color]"
/// header, then one line per unordered edge (u <= v).
std::string edge_list_csv(const Graph& g, const std::string& header);
std::string edge_list_csv(const ColoredGraph& cg, const std::string& header);

}  // namespace spectraff
