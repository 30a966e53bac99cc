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

#include "spectraff/graph.hpp"
#include "spectraff/report.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spectraff {

// ------------------------------------------------------------------- Graph

Graph::Graph(std::uint32_t n, std::string name)
    : n_(n), words_((n + 63) / 64), rows_(static_cast<std::size_t>(n) * ((n + 63) / 64), 0),
      name_(std::move(name)) {}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
}

std::uint32_t Graph::degree(std::uint32_t v) const {
  std::uint32_t d = 0;
  for (auto w : row(v)) d += static_cast<std::uint32_t>(std::popcount(w));
  return d;
}

std::vector<std::uint32_t> Graph::neighbors(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  const auto r = row(v);
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::uint64_t Graph::loop_count() const {
  std::uint64_t loops = 0;
  for (std::uint32_t v = 0; v < n_; ++v) loops += adjacent(v, v) ? 1 : 0;
  return loops;
}

std::uint64_t Graph::edge_count() const {
  std::uint64_t total = 0;
  for (std::uint32_t v = 0; v < n_; ++v) total += degree(v);
  const std::uint64_t loops = loop_count();
  return (total - loops) / 2 + loops;
}

std::optional<std::uint32_t> Graph::regular_degree() const {
  if (n_ == 0) return std::nullopt;
  const std::uint32_t d = degree(0);
  for (std::uint32_t v = 1; v < n_; ++v) {
    if (degree(v) != d) return std::nullopt;
  }
  return d;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(n_, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::uint32_t count = 1;
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (auto w : neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n_) throw std::invalid_argument("label count mismatch");
  labels_ = std::move(labels);
}

Graph Graph::without_loops() const {
  Graph out = *this;
  for (std::uint32_t v = 0; v < n_; ++v) {
    out.rows_[static_cast<std::size_t>(v) * words_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  }
  out.name_ = name_.empty() ? name_ : name_ + " (loops stripped)";
  return out;
}

// ------------------------------------------------------------ ColoredGraph

ColoredGraph::ColoredGraph(std::uint32_t n, std::vector<std::int32_t> colors,
                           std::vector<std::string> color_labels, std::string name)
    : n_(n), colors_(std::move(colors)), color_labels_(std::move(color_labels)),
      cells_(static_cast<std::size_t>(n) * n, -1), name_(std::move(name)) {
  if (color_labels_.size() != colors_.size()) throw std::invalid_argument("color label count mismatch");
  for (auto c : colors_) {
    if (c < 0 || c > std::numeric_limits<std::int16_t>::max()) {
      throw std::invalid_argument("color ids must fit in [0, 32767]");
    }
  }
}

std::size_t ColoredGraph::color_slot(std::int32_t color) const {
  const auto it = std::find(colors_.begin(), colors_.end(), color);
  if (it == colors_.end()) throw std::invalid_argument("unknown color " + std::to_string(color));
  return static_cast<std::size_t>(it - colors_.begin());
}

bool ColoredGraph::has_color(std::int32_t color) const {
  return std::find(colors_.begin(), colors_.end(), color) != colors_.end();
}

const std::string& ColoredGraph::color_label(std::int32_t color) const {
  return color_labels_[color_slot(color)];
}

void ColoredGraph::set_color(std::uint32_t u, std::uint32_t v, std::int32_t color) {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  if (color != -1) color_slot(color);
  cells_[static_cast<std::size_t>(u) * n_ + v] = static_cast<std::int16_t>(color);
  cells_[static_cast<std::size_t>(v) * n_ + u] = static_cast<std::int16_t>(color);
}

void ColoredGraph::finalize() {
  classes_.clear();
  for (auto c : colors_) classes_.emplace_back(n_, name_ + " color " + color_label(c));
  for (std::uint32_t u = 0; u < n_; ++u) {
    for (std::uint32_t v = u; v < n_; ++v) {
      const std::int32_t c = color(u, v);
      if (c >= 0) classes_[color_slot(c)].add_edge(u, v);
    }
  }
  for (auto& g : classes_) g.set_labels(labels_);
}

const Graph& ColoredGraph::class_graph(std::int32_t color) const {
  if (classes_.size() != colors_.size()) throw std::logic_error("ColoredGraph not finalized");
  return classes_[color_slot(color)];
}

std::uint64_t ColoredGraph::colored_pair_count() const {
  std::uint64_t count = 0;
  for (std::uint32_t u = 0; u < n_; ++u) {
    for (std::uint32_t v = u; v < n_; ++v) count += color(u, v) >= 0 ? 1 : 0;
  }
  return count;
}

Graph color_class(const ColoredGraph& cg, std::int32_t color) {
  if (!cg.has_color(color)) throw std::invalid_argument("unknown color " + std::to_string(color));
  Graph g(cg.n(), cg.name() + " color " + cg.color_label(color));
  for (std::uint32_t u = 0; u < cg.n(); ++u) {
    for (std::uint32_t v = u; v < cg.n(); ++v) {
      if (cg.color(u, v) == color) g.add_edge(u, v);
    }
  }
  g.set_labels(cg.labels());
  return g;
}

// ---------------------------------------------------------------- spectrum

std::vector<double> spectrum(const Graph& g, const Caps& caps) {
  caps.require_vertices(g.n(), "spectrum");
  const auto n = static_cast<lapack_int>(g.n());
  if (n == 0) return {};
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (std::uint32_t u = 0; u < g.n(); ++u) {
    for (auto v : g.neighbors(u)) a[static_cast<std::size_t>(u) * n + v] = 1.0;
  }
  std::vector<double> out(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, out.data());
  if (info != 0) throw std::runtime_error("eigensolver failed (info " + std::to_string(info) + ")");
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double second_eigenvalue(const std::vector<double>& descending) {
  if (descending.size() < 2) return 0.0;
  return std::max(descending[1], -descending.back());
}

nlohmann::json SpectralCert::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  for (const auto& [k, v] : params.items()) j[k] = v;
  j["n_vertices"] = n;
  j["d_claim"] = d_claim;
  j["lambda_claim"] = lambda_claim;
  j["lambda_measured"] = lambda_measured;
  j["satisfied"] = satisfied;
  return j;
}

SpectralCert certify_with_spectrum(const Graph& g, std::vector<double> spec,
                                   std::uint32_t d_claim, double lambda_claim) {
  SpectralCert cert;
  cert.family = g.name();
  cert.n = g.n();
  cert.d_claim = d_claim;
  cert.lambda_claim = lambda_claim;
  const auto deg = g.regular_degree();
  cert.regular = deg.has_value() && *deg == d_claim;
  cert.lambda_top = spec.empty() ? 0.0 : spec.front();
  cert.top_matches = std::abs(cert.lambda_top - d_claim) <= kSpectralTol;
  cert.lambda_measured = second_eigenvalue(spec);
  cert.satisfied = cert.regular && cert.top_matches &&
                   cert.lambda_measured <= lambda_claim + kSpectralTol;
  cert.spectrum = std::move(spec);
  return cert;
}

SpectralCert certify_ndl(const Graph& g, std::uint32_t d_claim, double lambda_claim,
                         const Caps& caps) {
  return certify_with_spectrum(g, spectrum(g, caps), d_claim, lambda_claim);
}

SpectralCert certify_ndl(const Graph& g, std::uint32_t d_claim, Rational lambda_claim_sq,
                         const Caps& caps) {
  auto cert = certify_ndl(g, d_claim, std::sqrt(lambda_claim_sq.value()), caps);
  cert.lambda_claim_sq = lambda_claim_sq;
  return cert;
}

// --------------------------------------------------------- square identity

SquareIdentityResult check_square_identity(const Graph& g, std::int64_t cJ, std::int64_t cI,
                                           const Graph& e_graph, std::int64_t cE) {
  if (g.n() != e_graph.n()) throw std::invalid_argument("square identity: vertex sets differ");
  SquareIdentityResult result;
  for (std::uint32_t u = 0; u < g.n(); ++u) {
    for (std::uint32_t v = 0; v < g.n(); ++v) {
      const std::int64_t lhs = and_count(g.row(u), g.row(v));
      const std::int64_t rhs = cJ + (u == v ? cI : 0) - (e_graph.adjacent(u, v) ? cE : 0);
      if (lhs != rhs) {
        if (result.holds) result.first_violation = SquareViolation{u, v, lhs, rhs};
        result.holds = false;
        ++result.violations;
      }
    }
  }
  return result;
}

// -------------------------------------------------------------------- dumps

std::string edge_list_csv(const Graph& g, const std::string& header) {
  std::ostringstream out;
  out << "# " << header << '\n' << "u,v\n";
  for (std::uint32_t u = 0; u < g.n(); ++u) {
    for (auto v : g.neighbors(u)) {
      if (v >= u) out << u << ',' << v << '\n';
    }
  }
  return out.str();
}

std::string edge_list_csv(const ColoredGraph& cg, const std::string& header) {
  std::ostringstream out;
  out << "# " << header << '\n' << "u,v,color\n";
  for (std::uint32_t u = 0; u < cg.n(); ++u) {
    for (std::uint32_t v = u; v < cg.n(); ++v) {
      const auto c = cg.color(u, v);
      if (c >= 0) out << u << ',' << v << ',' << csv_field(cg.color_label(c)) << '\n';
    }
  }
  return out.str();
}

}  // namespace spectraff
