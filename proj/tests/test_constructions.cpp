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

#include <map>
#include <set>

#include "spectraff/constructions.hpp"

namespace sf = spectraff;

namespace {

sf::FamilySpec spec(sf::Family f, std::uint32_t q, std::uint32_t dim, std::optional<std::uint32_t> l,
                    const std::string& form = "identity") {
  const auto field = sf::build_field_of_order(q);
  sf::FamilySpec s;
  s.family = f;
  s.p = field->p();
  s.r = field->r();
  s.n = s.d = dim;
  s.form = form;
  s.lambda = l;
  return s;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint32_t common(const sf::Graph& g, std::uint32_t u, std::uint32_t v) {
  return sf::and_count(g.row(u), g.row(v));
}

}  // namespace

TEST(NormGraph, ThreeTwoOneLoopsAndDegree) {
  const auto inst = sf::build_family(spec(sf::Family::norm, 3, 2, 1));
  const auto& g = *inst.graph;
  EXPECT_EQ(g.n(), 9u);
  EXPECT_EQ(g.regular_degree(), std::optional<std::uint32_t>(4));
  std::set<std::uint32_t> loops;
  for (std::uint32_t v = 0; v < 9; ++v) {
    if (g.adjacent(v, v)) loops.insert(v);
  }
  // -2 = 1, 2, t, 2t in the base-3 encoding
  EXPECT_EQ(loops, (std::set<std::uint32_t>{1, 2, 3, 6}));
  EXPECT_EQ(inst.d_claim, 4u);
  EXPECT_EQ(inst.lambda_claim_sq.num, 9);
}

TEST(NormGraph, AdjacencyMatchesNormOfSum) {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 3}, {5, 2}, {9, 2}}) {
    const auto ext = sf::build_extension(sf::build_field_of_order(q), n);
    for (std::uint32_t l = 1; l < q; ++l) {
      const auto g = sf::norm_graph(*ext, {l});
      EXPECT_EQ(g.regular_degree(), std::optional<std::uint32_t>(ext->norm_fiber_size()));
      for (std::uint32_t x = 0; x < g.n(); ++x) {
        for (std::uint32_t y = 0; y < g.n(); ++y) {
          EXPECT_EQ(g.adjacent(x, y), ext->norm(ext->add({x}, {y})).code == l);
        }
      }
      const auto simple = sf::norm_graph(*ext, {l}, sf::LoopMode::strip);
      EXPECT_EQ(simple.loop_count(), 0u);
      EXPECT_EQ(simple, g.without_loops());
    }
    EXPECT_THROW(sf::norm_graph(*ext, {0}), std::invalid_argument);
  }
}

TEST(ProductGraph, ThreeTwoNeighborsOfE1) {
  const auto inst = sf::build_family(spec(sf::Family::product, 3, 2, 1));
  const auto& g = *inst.graph;
  EXPECT_EQ(g.n(), 8u);
  // vertex i is the vector with encoding i + 1: (1,0) -> 0, (1,1) -> 3, (1,2) -> 6
  EXPECT_EQ(g.neighbors(0), (std::vector<std::uint32_t>{0, 3, 6}));
  EXPECT_EQ(g.degree(0), 3u);
}

TEST(ProductGraph, CommonNeighborCountsExhaustive) {
  for (std::uint32_t q : {3u, 5u}) {
    for (std::uint32_t d : {2u, 3u}) {
      const auto inst = sf::build_family(spec(sf::Family::product, q, d, 1));
      const auto& g = *inst.graph;
      const sf::VectorSpace& space = *inst.space;
      EXPECT_EQ(g.regular_degree(), std::optional<std::uint32_t>(ipow(q, d - 1)));
      for (std::uint32_t u = 0; u < g.n(); ++u) {
        for (std::uint32_t v = u + 1; v < g.n(); ++v) {
          const auto x = space.decode(u + 1), y = space.decode(v + 1);
          bool dependent = false;
          for (std::uint32_t a = 2; a < q && !dependent; ++a) {
            dependent = space.scale(space.field().element(a), x) == y;
          }
          EXPECT_EQ(common(g, u, v), dependent ? 0u : ipow(q, d - 2));
        }
      }
    }
  }
}

TEST(ProductGraph, RejectsZeroLambdaAndAsymmetricForm) {
  const auto f = sf::build_field(3, 1);
  EXPECT_THROW(sf::product_graph(sf::BilinearForm(f, sf::FqMatrix::identity(*f, 2)), {0}), std::invalid_argument);
  EXPECT_THROW(sf::product_graph(sf::BilinearForm(f, sf::FqMatrix::from_codes(*f, {{1, 1}, {0, 1}})), {1}),
               std::invalid_argument);
}

TEST(SumProductGraph, ThreeOneZero) {
  const auto inst = sf::build_family(spec(sf::Family::sumproduct, 3, 1, 0));
  const auto& g = *inst.graph;
  EXPECT_EQ(g.n(), 9u);
  // (a, b) has index a + 3b
  EXPECT_EQ(g.neighbors(0), (std::vector<std::uint32_t>{0, 3, 6}));
  EXPECT_EQ(g.regular_degree(), std::optional<std::uint32_t>(3));
  // triangle {(-a,0), (a,b), (a,d)} with bd = 2a: a = 1, b = 1, d = 2
  const std::uint32_t x = sf::sumproduct_index(3, {2}, 0), y = sf::sumproduct_index(3, {1}, 1),
                      z = sf::sumproduct_index(3, {1}, 2);
  EXPECT_TRUE(g.adjacent(x, y));
  EXPECT_TRUE(g.adjacent(y, z));
  EXPECT_TRUE(g.adjacent(x, z));
}

TEST(SumProductGraph, CommonNeighborCountsExhaustive) {
  for (std::uint32_t q : {3u, 5u}) {
    for (std::uint32_t d : {1u, 2u}) {
      for (std::uint32_t l : {0u, 1u}) {
        const auto inst = sf::build_family(spec(sf::Family::sumproduct, q, d, l));
        const auto& g = *inst.graph;
        EXPECT_EQ(g.n(), ipow(q, d + 1));
        EXPECT_EQ(g.regular_degree(), std::optional<std::uint32_t>(ipow(q, d)));
        for (std::uint32_t u = 0; u < g.n(); ++u) {
          for (std::uint32_t v = u + 1; v < g.n(); ++v) {
            const bool same_fiber = u / q == v / q;
            EXPECT_EQ(common(g, u, v), same_fiber ? 0u : ipow(q, d - 1));
          }
        }
        for (std::uint32_t u = 0; u < g.n(); ++u) {
          for (std::uint32_t v = 0; v < g.n(); ++v) {
            const auto val = inst.value(u, v);
            EXPECT_EQ(g.adjacent(u, v), val.code == l);
          }
        }
      }
    }
  }
}

TEST(EuclideanGraph, ThreeTwoOneIsFourRegular) {
  const auto inst = sf::build_family(spec(sf::Family::euclidean, 3, 2, 1));
  EXPECT_EQ(inst.graph->n(), 9u);
  EXPECT_EQ(inst.graph->regular_degree(), std::optional<std::uint32_t>(4));
  EXPECT_EQ(inst.graph->loop_count(), 0u);
  EXPECT_EQ(inst.graph->edge_count(), 18u);
}

TEST(EuclideanGraph, DegreeIsSphereSizeForBothForms) {
  for (std::uint32_t q : {5u, 7u, 9u}) {
    for (std::string form : {"identity", "skew"}) {
      for (std::uint32_t l = 1; l < q; ++l) {
        const auto inst = sf::build_family(spec(sf::Family::euclidean, q, 2, l, form));
        const auto s = sf::sphere(*inst.quadratic, {l});
        EXPECT_EQ(inst.graph->regular_degree(), std::optional<std::uint32_t>(s.points.size()));
        EXPECT_EQ(inst.d_claim, s.points.size());
      }
    }
  }
}

TEST(EuclideanGraph, MatrixFormFromSpec) {
  auto s = spec(sf::Family::euclidean, 5, 2, 1, "matrix");
  s.matrix = {{0, 1}, {1, 0}};
  const auto inst = sf::build_family(s);
  for (std::uint32_t u = 0; u < inst.graph->n(); ++u) {
    const auto x = inst.space->decode(u);
    EXPECT_EQ(inst.graph->adjacent(0, u), inst.field->mul(inst.field->from_int(2), inst.field->mul(x[0], x[1])).code == 1);
  }
  s.matrix = {{1, 0}, {0, 0}};
  EXPECT_THROW(sf::build_family(s), std::invalid_argument);
}

TEST(NonEuclidean, VertexCountIsHalfTheUnitSphere) {
  for (std::uint32_t q : {5u, 7u, 9u}) {
    for (std::uint32_t d : {3u, 4u}) {
      const auto f = sf::build_field_of_order(q);
      const auto form = sf::sum_of_squares(f, d);
      const auto scheme = sf::noneuclidean_scheme(form);
      const auto s = sf::sphere(form, f->one());
      EXPECT_EQ(scheme.n() * 2, s.points.size());
      if (d == 3) EXPECT_TRUE(s.points.size() == q * q + q || s.points.size() == q * q - q);
      EXPECT_EQ(scheme.relation_count, (q + 1) / 2);
    }
  }
}

TEST(NonEuclidean, RelationIsAFunctionOfGammaSquared) {
  for (std::uint32_t q : {5u, 7u, 9u}) {
    const auto f = sf::build_field_of_order(q);
    const auto form = sf::sum_of_squares(f, 3);
    const sf::VectorSpace space(f, 3);
    const auto scheme = sf::noneuclidean_scheme(form);
    std::map<std::uint32_t, int> by_gamma_sq;
    std::map<int, std::uint32_t> by_relation;
    const auto two = f->from_int(2);
    for (std::uint32_t u = 0; u < scheme.n(); ++u) {
      const auto x = space.decode(scheme.sphere_points[u]);
      EXPECT_EQ(form.eval(x), f->one());
      for (std::uint32_t v = 0; v < scheme.n(); ++v) {
        if (u == v) continue;
        const auto y = space.decode(scheme.sphere_points[v]);
        const auto gamma = f->sub(form.eval(space.add(x, y)), two);
        const auto key = f->mul(gamma, gamma).code;
        const int rel = scheme.relation_of(u, v);
        EXPECT_EQ(rel, scheme.relation_of(v, u));
        auto [it, fresh] = by_gamma_sq.emplace(key, rel);
        if (!fresh) EXPECT_EQ(it->second, rel);
        auto [jt, fresh2] = by_relation.emplace(rel, key);
        if (!fresh2) EXPECT_EQ(jt->second, key);
        const auto c = scheme.graph.color(u, v);
        if (rel >= 2 && rel <= static_cast<int>((q - 1) / 2)) {
          EXPECT_EQ(c, rel);
        } else {
          EXPECT_EQ(c, -1);
        }
      }
    }
  }
}

TEST(NonEuclidean, ClassesAreRegularAndDisjoint) {
  const auto f = sf::build_field_of_order(7);
  const auto scheme = sf::noneuclidean_scheme(sf::sum_of_squares(f, 4));
  EXPECT_EQ(scheme.graph.colors(), (std::vector<std::int32_t>{2, 3}));
  for (auto c : scheme.graph.colors()) {
    EXPECT_TRUE(scheme.graph.class_graph(c).regular_degree().has_value());
    EXPECT_EQ(scheme.graph.class_graph(c).loop_count(), 0u);
  }
  for (std::uint32_t u = 0; u < scheme.n(); ++u) {
    for (std::uint32_t v = 0; v < scheme.n(); ++v) {
      int hits = 0;
      for (auto c : scheme.graph.colors()) hits += scheme.graph.class_graph(c).adjacent(u, v);
      EXPECT_LE(hits, 1);
    }
  }
}

TEST(ColoredFamilies, ClassesRoundTripWithSingleBuilds) {
  for (auto f : {sf::Family::norm, sf::Family::product, sf::Family::sumproduct, sf::Family::euclidean}) {
    const auto colored = sf::build_family(spec(f, 5, 2, std::nullopt));
    const auto& cg = *colored.colored;
    const std::size_t want = f == sf::Family::sumproduct ? 5 : 4;
    EXPECT_EQ(cg.colors().size(), want) << sf::to_string(f);
    for (auto c : cg.colors()) {
      const auto single = sf::build_family(spec(f, 5, 2, static_cast<std::uint32_t>(c)));
      EXPECT_EQ(cg.class_graph(c), *single.graph) << sf::to_string(f) << " color " << c;
    }
  }
  const auto norm = sf::build_family(spec(sf::Family::norm, 5, 2, std::nullopt));
  for (auto c : norm.colored->colors()) {
    EXPECT_EQ(norm.colored->class_graph(c).regular_degree(), std::optional<std::uint32_t>(6));
  }
}

TEST(FamilySpecJson, RoundTripAndLiterals) {
  auto s = spec(sf::Family::euclidean, 9, 3, 4, "skew");
  s.loops = sf::LoopMode::strip;
  const auto back = sf::FamilySpec::from_json(s.to_json());
  EXPECT_EQ(back.to_json(), s.to_json());
  EXPECT_EQ(back.q(), 9u);
  const auto lit = sf::FamilySpec::from_json({{"family", "norm"}, {"q", 9}, {"n", 2}, {"lambda", "0,1"}});
  EXPECT_EQ(lit.lambda, std::optional<std::uint32_t>(3));
  const auto all = sf::FamilySpec::from_json({{"family", "product"}, {"p", 5}, {"d", 2}, {"lambda", "all"}});
  EXPECT_FALSE(all.lambda.has_value());
  EXPECT_THROW(sf::FamilySpec::from_json({{"family", "bogus"}, {"q", 3}}), std::invalid_argument);
}

TEST(BuildFamily, ClaimsPerFamily) {
  EXPECT_EQ(sf::build_family(spec(sf::Family::product, 5, 3, 1)).d_claim, 25u);
  EXPECT_EQ(sf::build_family(spec(sf::Family::product, 5, 3, 1)).lambda_claim_sq.num, 50);
  EXPECT_EQ(sf::build_family(spec(sf::Family::sumproduct, 5, 2, 1)).d_claim, 25u);
  EXPECT_EQ(sf::build_family(spec(sf::Family::sumproduct, 5, 2, 1)).lambda_claim_sq.num, 50);
  const auto e = sf::build_family(spec(sf::Family::euclidean, 5, 3, 1));
  EXPECT_EQ(e.lambda_claim_sq.num, 100);
  EXPECT_THROW(sf::build_family(spec(sf::Family::norm, 3, 2, 0)), std::invalid_argument);
  EXPECT_THROW(sf::build_family(spec(sf::Family::euclidean, 13, 4, 1)), sf::CapExceeded);
}
