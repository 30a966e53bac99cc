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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "spectraff/constructions.hpp"
#include "spectraff/graph.hpp"

namespace sf = spectraff;

namespace {

sf::Graph complete(std::uint32_t n) {
  sf::Graph g(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

sf::FamilySpec spec(sf::Family f, std::uint32_t q, std::uint32_t dim, std::optional<std::uint32_t> l) {
  const auto field = sf::build_field_of_order(q);
  sf::FamilySpec s;
  s.family = f;
  s.p = field->p();
  s.r = field->r();
  s.n = s.d = dim;
  s.lambda = l;
  return s;
}

// lambda(G) of a regular graph by power iteration on A^2 restricted to the
// complement of the all-ones vector.
double lambda_by_power_iteration(const sf::Graph& g) {
  const std::uint32_t n = g.n();
  std::vector<double> v(n), w(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = std::sin(1.0 + 0.7 * i) + 0.01 * (i % 5);
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::uint32_t u = 0; u < n; ++u) {
      double s = 0;
      for (auto nb : g.neighbors(u)) s += x[nb];
      y[u] = s;
    }
  };
  auto project = [&](std::vector<double>& x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double norm = 0;
    for (auto& e : x) {
      e -= mean;
      norm += e * e;
    }
    norm = std::sqrt(norm);
    for (auto& e : x) e /= norm;
  };
  project(v);
  double rq = 0;
  std::vector<double> tmp(n);
  for (int it = 0; it < 4000; ++it) {
    apply(v, tmp);
    apply(tmp, w);
    rq = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
    v = w;
    project(v);
  }
  return std::sqrt(rq);
}

}  // namespace

TEST(Graph, LoopCountsOnceInDegree) {
  sf::Graph g(3);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_EQ(g.loop_count(), 1u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_EQ(g.without_loops().loop_count(), 0u);
}

TEST(Spectrum, CompleteGraphK4) {
  const auto s = sf::spectrum(complete(4));
  ASSERT_EQ(s.size(), 4u);
  EXPECT_NEAR(s[0], 3.0, 1e-9);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(s[i], -1.0, 1e-9);
}

TEST(Spectrum, EmptyGraphIsZero) {
  for (double e : sf::spectrum(sf::Graph(5))) EXPECT_NEAR(e, 0.0, 1e-12);
}

TEST(Spectrum, EuclideanThreeTwoOne) {
  const auto inst = sf::build_family(spec(sf::Family::euclidean, 3, 2, 1));
  const auto s = sf::spectrum(*inst.graph);
  // character sums 2cos(2 pi a/3) + 2cos(2 pi b/3)
  std::vector<double> want;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) want.push_back(2 * std::cos(2 * M_PI * a / 3) + 2 * std::cos(2 * M_PI * b / 3));
  }
  std::sort(want.begin(), want.end(), std::greater<>());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s[i], want[i], 1e-9);
}

TEST(Spectrum, PowerSumsMatchTraceAndDegrees) {
  for (auto f : {sf::Family::norm, sf::Family::product, sf::Family::sumproduct, sf::Family::euclidean}) {
    for (std::uint32_t q : {3u, 5u}) {
      const auto inst = sf::build_family(spec(f, q, 2, 1));
      const auto& g = *inst.graph;
      const auto s = sf::spectrum(g);
      const double sum = std::accumulate(s.begin(), s.end(), 0.0);
      double sq = 0;
      for (double e : s) sq += e * e;
      std::uint64_t deg = 0;
      for (std::uint32_t v = 0; v < g.n(); ++v) deg += g.degree(v);
      EXPECT_NEAR(sum, static_cast<double>(g.loop_count()), 1e-8 * g.n());
      EXPECT_NEAR(sq, static_cast<double>(deg), 1e-7 * g.n());
    }
  }
}

TEST(Spectrum, DenseSolveAgreesWithPowerIteration) {
  for (auto f : {sf::Family::norm, sf::Family::product, sf::Family::sumproduct, sf::Family::euclidean}) {
    for (std::uint32_t q : {3u, 5u, 7u}) {
      const auto inst = sf::build_family(spec(f, q, 2, 1));
      const double dense = sf::second_eigenvalue(sf::spectrum(*inst.graph));
      EXPECT_NEAR(dense, lambda_by_power_iteration(*inst.graph), 1e-6) << sf::to_string(f) << " q=" << q;
    }
  }
}

TEST(Spectrum, TopEigenvalueSimpleOnConnectedFamilies) {
  for (auto f : {sf::Family::norm, sf::Family::product, sf::Family::sumproduct, sf::Family::euclidean}) {
    const auto inst = sf::build_family(spec(f, 5, 2, 1));
    ASSERT_TRUE(inst.graph->connected());
    const auto s = sf::spectrum(*inst.graph);
    EXPECT_GT(s[0] - s[1], 1e-6);
  }
}

TEST(Spectrum, RespectsVertexCap) {
  EXPECT_THROW(sf::spectrum(sf::Graph(20), sf::Caps{}.with_max_vertices(10)), sf::CapExceeded);
}

TEST(Certify, NormGraphThreeTwo) {
  const auto inst = sf::build_family(spec(sf::Family::norm, 3, 2, 1));
  const auto c = sf::certify_ndl(*inst.graph, 4, 3.0);
  EXPECT_TRUE(c.satisfied);
  EXPECT_EQ(c.n, 9u);
  EXPECT_NEAR(c.lambda_measured, 2.0, 1e-9);
}

TEST(Certify, ProductGraphThreeTwo) {
  const auto inst = sf::build_family(spec(sf::Family::product, 3, 2, 1));
  const auto c = sf::certify_ndl(*inst.graph, 3, sf::Rational{6, 1});
  EXPECT_TRUE(c.satisfied);
  EXPECT_EQ(c.n, 8u);
  EXPECT_NEAR(c.lambda_claim, std::sqrt(6.0), 1e-12);
}

TEST(Certify, K4WithTightClaimFails) {
  const auto c = sf::certify_ndl(complete(4), 3, 0.5);
  EXPECT_TRUE(c.regular);
  EXPECT_TRUE(c.top_matches);
  EXPECT_FALSE(c.satisfied);
  EXPECT_NEAR(c.lambda_measured, 1.0, 1e-9);
}

TEST(Certify, WrongDegreeFails) {
  const auto c = sf::certify_ndl(complete(4), 2, 5.0);
  EXPECT_FALSE(c.regular);
  EXPECT_FALSE(c.satisfied);
}

TEST(SquareIdentity, SumProductThreeOne) {
  const auto f = sf::build_field(3, 1);
  const auto inst = sf::build_family(spec(sf::Family::sumproduct, 3, 1, 0));
  const auto e = sf::same_fiber_graph(sf::VectorSpace(f, 1));
  EXPECT_TRUE(sf::check_square_identity(*inst.graph, 1, 2, e).holds);
}

TEST(SquareIdentity, ProductThreeTwo) {
  const auto f = sf::build_field(3, 1);
  const auto inst = sf::build_family(spec(sf::Family::product, 3, 2, 1));
  const auto e = sf::linear_dependence_graph(sf::VectorSpace(f, 2));
  EXPECT_TRUE(sf::check_square_identity(*inst.graph, 1, 2, e).holds);
}

TEST(SquareIdentity, ZeroGraph) {
  EXPECT_TRUE(sf::check_square_identity(sf::Graph(4), 0, 0, sf::Graph(4)).holds);
}

TEST(SquareIdentity, ReportsFirstViolation) {
  const auto r = sf::check_square_identity(complete(3), 0, 0, sf::Graph(3));
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.first_violation.has_value());
  EXPECT_EQ(r.first_violation->u, 0u);
  EXPECT_EQ(r.first_violation->v, 0u);
  EXPECT_EQ(r.first_violation->lhs, 2);
  EXPECT_EQ(r.violations, 9u);
  EXPECT_THROW(sf::check_square_identity(complete(3), 0, 0, sf::Graph(4)), std::invalid_argument);
}

TEST(SquareIdentity, MatchesExplicitMatrixProduct) {
  // A^2 via integer matrix multiplication against the bitset routine
  const auto inst = sf::build_family(spec(sf::Family::product, 5, 2, 2));
  const auto& g = *inst.graph;
  const std::uint32_t n = g.n();
  const std::int64_t cj = 1, ci = 4;  // q^{d-2}, q^{d-1} - q^{d-2}
  sf::Graph e(n);
  bool holds = true;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      std::int64_t s = 0;
      for (std::uint32_t w = 0; w < n; ++w) s += g.adjacent(u, w) && g.adjacent(w, v);
      const std::int64_t rhs = cj + (u == v ? ci : 0);
      if (u < v && s == rhs - 1) e.add_edge(u, v);
      holds &= s == rhs || (u != v && s == rhs - 1);
    }
  }
  EXPECT_TRUE(holds);
  EXPECT_TRUE(sf::check_square_identity(g, cj, ci, e).holds);
  EXPECT_EQ(e, sf::linear_dependence_graph(sf::VectorSpace(sf::build_field(5, 1), 2)));
}

TEST(ColoredGraph, EuclideanClassEqualsSingleGraph) {
  const auto colored = sf::build_family(spec(sf::Family::euclidean, 3, 2, std::nullopt));
  const auto& cg = *colored.colored;
  EXPECT_EQ(cg.colors().size(), 2u);
  std::uint64_t total = 0;
  for (auto c : cg.colors()) {
    const auto single = sf::build_family(spec(sf::Family::euclidean, 3, 2, c));
    EXPECT_EQ(sf::color_class(cg, c), *single.graph);
    EXPECT_EQ(cg.class_graph(c).regular_degree(), std::optional<std::uint32_t>(4));
    total += cg.class_graph(c).edge_count();
  }
  EXPECT_EQ(total, cg.colored_pair_count());
  EXPECT_THROW(sf::color_class(cg, 7), std::invalid_argument);
}

TEST(ColoredGraph, NormClassesShareSpectra) {
  const auto colored = sf::build_family(spec(sf::Family::norm, 3, 2, std::nullopt));
  const auto s1 = sf::spectrum(colored.colored->class_graph(1));
  const auto s2 = sf::spectrum(colored.colored->class_graph(2));
  for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_NEAR(s1[i], s2[i], 1e-6);
}

TEST(EdgeList, HeaderAndOneLinePerEdge) {
  sf::Graph g(3);
  g.add_edge(0, 0);
  g.add_edge(2, 1);
  EXPECT_EQ(sf::edge_list_csv(g, "demo"), "# demo\nu,v\n0,0\n1,2\n");
}
