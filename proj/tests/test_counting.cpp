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

#include <algorithm>
#include <cmath>
#include <set>

#include "spectraff/constructions.hpp"
#include "spectraff/counting.hpp"
#include "spectraff/rng.hpp"

namespace sf = spectraff;

namespace {

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

struct Certified {
  sf::FamilyInstance inst;
  sf::SpectralCert cert;
};

Certified certified(sf::Family f, std::uint32_t q, std::uint32_t dim, std::uint32_t l) {
  auto inst = sf::build_family(spec(f, q, dim, l));
  auto cert = sf::certify_ndl(*inst.graph, inst.d_claim, inst.lambda_claim_sq);
  return {std::move(inst), std::move(cert)};
}

sf::VertexSubset random_subset(std::uint32_t n, std::uint32_t k, sf::Rng& rng) {
  return sf::VertexSubset(n, rng.sample(n, k));
}

std::uint64_t edges_oracle(const sf::Graph& g, const sf::VertexSubset& b, const sf::VertexSubset& c) {
  std::uint64_t e = 0;
  for (auto u : b.members()) {
    for (auto w : c.members()) e += g.adjacent(u, w);
  }
  return e;
}

// sum over y in U2^t of |{x in U1 : x ~ y_i for all i}|^s, by tuple enumeration
std::uint64_t kst_oracle(const sf::Graph& g, const sf::VertexSubset& u1, const sf::VertexSubset& u2,
                         std::uint32_t s, std::uint32_t t) {
  const auto& m = u2.members();
  std::vector<std::size_t> idx(t, 0);
  std::uint64_t total = 0;
  while (true) {
    std::uint64_t common = 0;
    for (auto x : u1.members()) {
      bool all = true;
      for (std::uint32_t i = 0; i < t && all; ++i) all = g.adjacent(x, m[idx[i]]);
      common += all;
    }
    std::uint64_t pw = 1;
    for (std::uint32_t i = 0; i < s; ++i) pw *= common;
    total += pw;
    std::uint32_t k = 0;
    while (k < t && ++idx[k] == m.size()) idx[k++] = 0;
    if (k == t) break;
  }
  return total;
}

}  // namespace

TEST(VertexSubset, SortsDedupsAndValidates) {
  const sf::VertexSubset s(10, {5, 1, 5, 3});
  EXPECT_EQ(s.members(), (std::vector<std::uint32_t>{1, 3, 5}));
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(4));
  EXPECT_THROW(sf::VertexSubset(4, {4}), std::invalid_argument);
}

TEST(EdgeCount, Examples) {
  const auto c = certified(sf::Family::norm, 3, 2, 1);
  const auto& g = *c.inst.graph;
  const auto all = sf::VertexSubset::all(9);
  EXPECT_EQ(sf::edge_count(g, all, all), 9u * 4u);
  EXPECT_EQ(sf::edge_count(g, sf::VertexSubset(9, {}), all), 0u);
  // B = {1, -1} = codes {1, 2}; C = {t, -t} = codes {3, 6}
  const sf::VertexSubset b(9, {1, 2}), cc(9, {3, 6});
  EXPECT_EQ(sf::edge_count(g, b, cc), edges_oracle(g, b, cc));
  sf::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_subset(9, rng.below(10), rng), y = random_subset(9, rng.below(10), rng);
    EXPECT_EQ(sf::edge_count(g, x, y), edges_oracle(g, x, y));
  }
}

TEST(Mixing, FullSetsHaveNoDiscrepancyAndSingletonMatches) {
  const auto c = certified(sf::Family::euclidean, 5, 2, 1);
  const auto& g = *c.inst.graph;
  const auto all = sf::VertexSubset::all(g.n());
  const auto full = sf::mixing_check(g, c.cert, all, all);
  EXPECT_TRUE(full.satisfied);
  EXPECT_NEAR(full.deviation, 0.0, 1e-9);
  const sf::VertexSubset one(g.n(), {0});
  const sf::VertexSubset nbrs(g.n(), g.neighbors(0));
  const auto r = sf::mixing_check(g, c.cert, one, nbrs);
  const double d = c.cert.d_claim;
  EXPECT_EQ(r.observed, static_cast<std::uint64_t>(d));
  EXPECT_NEAR(r.expected, d * d / g.n(), 1e-12);
  EXPECT_TRUE(r.satisfied);
}

TEST(Mixing, HoldsOnRandomPairsForEveryFamily) {
  sf::Rng rng(2024);
  for (auto f : {sf::Family::norm, sf::Family::product, sf::Family::sumproduct, sf::Family::euclidean}) {
    const auto c = certified(f, 5, 2, 1);
    ASSERT_TRUE(c.cert.satisfied);
    const auto n = c.inst.graph->n();
    for (int i = 0; i < 100; ++i) {
      const auto b = random_subset(n, 1 + rng.below(n), rng), cc = random_subset(n, 1 + rng.below(n), rng);
      EXPECT_TRUE(sf::mixing_check(*c.inst.graph, c.cert, b, cc).satisfied);
      EXPECT_TRUE(sf::degree_variance(*c.inst.graph, c.cert, b).satisfied);
      EXPECT_TRUE(sf::path2_check(*c.inst.graph, c.cert, b, cc).satisfied);
    }
  }
}

TEST(Mixing, RejectsStaleCertificate) {
  const auto a = certified(sf::Family::euclidean, 5, 2, 1);
  const auto b = certified(sf::Family::norm, 3, 2, 1);
  const auto all = sf::VertexSubset::all(a.inst.graph->n());
  EXPECT_THROW(sf::mixing_check(*a.inst.graph, b.cert, all, all), std::invalid_argument);
}

TEST(DegreeVariance, FullSetZeroAndEmptyTrivial) {
  const auto c = certified(sf::Family::product, 5, 2, 2);
  const auto& g = *c.inst.graph;
  const auto full = sf::degree_variance(g, c.cert, sf::VertexSubset::all(g.n()));
  EXPECT_EQ(full.observed, 0u);
  EXPECT_TRUE(full.satisfied);
  const auto empty = sf::degree_variance(g, c.cert, sf::VertexSubset(g.n(), {}));
  EXPECT_TRUE(empty.trivial);
  EXPECT_TRUE(empty.satisfied);
}

TEST(Path2, MatchesTripleLoopOracle) {
  sf::Rng rng(9);
  const auto c = certified(sf::Family::product, 5, 2, 1);
  const auto& g = *c.inst.graph;
  const auto n = g.n();
  for (int i = 0; i < 30; ++i) {
    const auto b = random_subset(n, rng.below(n + 1), rng), cc = random_subset(n, rng.below(n + 1), rng);
    std::uint64_t oracle = 0;
    for (auto c1 : cc.members()) {
      for (auto mid : b.members()) {
        for (auto c2 : cc.members()) oracle += g.adjacent(c1, mid) && g.adjacent(mid, c2);
      }
    }
    EXPECT_EQ(sf::path2_count(g, b, cc), oracle);
    EXPECT_EQ(sf::star_sum(g, b, cc, 2), oracle);
    EXPECT_EQ(sf::star_sum(g, b, cc, 1), sf::edge_count(g, b, cc));
  }
  const sf::VertexSubset v(n, {3});
  EXPECT_EQ(sf::path2_count(g, v, sf::VertexSubset::all(n)), static_cast<std::uint64_t>(g.degree(3)) * g.degree(3));
  EXPECT_EQ(sf::path2_count(g, v, sf::VertexSubset(n, {})), 0u);
}

TEST(StarSum, FullSecondSetOnRegularGraph) {
  const auto c = certified(sf::Family::euclidean, 5, 2, 2);
  const auto& g = *c.inst.graph;
  const sf::VertexSubset u1(g.n(), {0, 4, 7});
  const std::uint64_t d = c.cert.d_claim;
  EXPECT_EQ(sf::star_sum(g, u1, sf::VertexSubset::all(g.n()), 3), 3 * d * d * d);
}

TEST(Kst, BothSidesAgreeWithTupleOracle) {
  sf::Rng rng(77);
  for (auto f : {sf::Family::norm, sf::Family::euclidean, sf::Family::sumproduct}) {
    const auto c = certified(f, 3, 2, 1);
    const auto& g = *c.inst.graph;
    for (int i = 0; i < 10; ++i) {
      const auto u1 = random_subset(g.n(), 1 + rng.below(8), rng), u2 = random_subset(g.n(), 1 + rng.below(8), rng);
      for (std::uint32_t s = 1; s <= 3; ++s) {
        for (std::uint32_t t = 1; t <= 3; ++t) {
          const auto k = sf::kst_sum(g, u1, u2, s, t);
          EXPECT_TRUE(k.agree());
          EXPECT_EQ(k.value(), kst_oracle(g, u1, u2, s, t)) << "s=" << s << " t=" << t;
          if (s == 1) EXPECT_EQ(k.value(), sf::star_sum(g, u1, u2, t));
        }
      }
      const auto k2 = sf::k2t_sum(g, c.cert, u1, u2, 1);
      EXPECT_EQ(k2.value(), sf::path2_count(g, u2, u1));
    }
  }
  const auto c = certified(sf::Family::norm, 3, 2, 1);
  const auto all = sf::VertexSubset::all(9);
  EXPECT_EQ(sf::kst_sum(*c.inst.graph, all, all, 1, 1).value(), 36u);
  EXPECT_THROW(sf::kst_sum(*c.inst.graph, all, all, 5, 1), sf::CapExceeded);
  EXPECT_THROW(sf::kst_sum(*c.inst.graph, all, all, 0, 1), std::invalid_argument);
}

TEST(ColoredStars, TOneIndicatorAndCauchySchwarz) {
  const auto inst = sf::build_family(spec(sf::Family::euclidean, 5, 2, std::nullopt));
  const auto& cg = *inst.colored;
  sf::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto u1 = random_subset(25, 1 + rng.below(25), rng), u2 = random_subset(25, 1 + rng.below(25), rng);
    const std::int32_t color = cg.colors()[rng.below(cg.colors().size())];
    const std::int32_t colors[] = {color};
    const auto r = sf::colored_star_indicator(cg, u1, u2, colors);
    std::uint64_t with_nbr = 0, sum = 0;
    for (auto y : u2.members()) {
      std::uint64_t s = 0;
      for (auto x : u1.members()) s += cg.color(x, y) == color;
      with_nbr += s > 0;
      sum += s;
    }
    EXPECT_EQ(r.sum_i, with_nbr);
    EXPECT_EQ(r.sum_s, sum);
    EXPECT_TRUE(r.cauchy_schwarz);
  }
  // U1 = V: every y has neighbours of every color
  const auto all = sf::VertexSubset::all(25);
  const sf::VertexSubset u2(25, {0, 1, 2});
  const std::int32_t one[] = {3};
  EXPECT_EQ(sf::colored_star_indicator(cg, all, u2, one).sum_i, 3u);
  // t = 2 against pair enumeration
  const std::int32_t pair[] = {1, 2};
  std::uint64_t sum_s = 0, sum_i = 0, sum_s2 = 0;
  for (auto y1 : u2.members()) {
    for (auto y2 : u2.members()) {
      std::uint64_t s = 0;
      for (std::uint32_t x = 0; x < 25; ++x) s += cg.color(x, y1) == 1 && cg.color(x, y2) == 2;
      sum_s += s;
      sum_i += s > 0;
      sum_s2 += s * s;
    }
  }
  const auto two = sf::colored_star_indicator(cg, all, u2, pair);
  EXPECT_EQ(two.sum_s, sum_s);
  EXPECT_EQ(two.sum_i, sum_i);
  EXPECT_EQ(two.sum_s2, sum_s2);
  const std::int32_t bad[] = {0};
  EXPECT_THROW(sf::colored_star_indicator(cg, all, u2, bad), std::invalid_argument);
}

TEST(Coverage, TwoIsNumberOfColorsPresent) {
  const auto inst = sf::build_family(spec(sf::Family::euclidean, 5, 2, std::nullopt));
  const auto& cg = *inst.colored;
  const sf::VertexSubset u(25, {0, 1, 6});
  std::set<std::int32_t> present;
  for (auto a : u.members()) {
    for (auto b : u.members()) {
      if (a != b && cg.color(a, b) >= 0) present.insert(cg.color(a, b));
    }
  }
  const auto cov = sf::kt_color_coverage(cg, u, 2);
  EXPECT_EQ(cov.labeled, present.size());
  EXPECT_EQ(cov.orbits, present.size());
  EXPECT_EQ(cov.max_patterns, 4u);
}

TEST(Coverage, MonotoneAndBounded) {
  sf::Rng rng(5);
  const auto inst = sf::build_family(spec(sf::Family::product, 5, 2, std::nullopt));
  const auto& cg = *inst.colored;
  std::vector<std::uint32_t> members;
  std::uint64_t prev = 0;
  auto perm = rng.sample(cg.n(), cg.n());
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (std::uint32_t v : perm) {
    members.push_back(v);
    const auto cov = sf::kt_color_coverage(cg, sf::VertexSubset(cg.n(), members), 3);
    EXPECT_GE(cov.orbits, prev);
    EXPECT_LE(cov.labeled, cov.max_patterns);
    EXPECT_LE(cov.orbits, cov.labeled);
    prev = cov.orbits;
  }
}

TEST(Pinned, SingletonAndFullSet) {
  const auto inst = sf::build_family(spec(sf::Family::euclidean, 5, 2, std::nullopt));
  const auto& cg = *inst.colored;
  const auto single = sf::pinned_set(cg, 7, sf::VertexSubset(25, {7}), inst.value);
  EXPECT_TRUE(single.colors.empty());
  EXPECT_EQ(single.zero_realized, std::optional<bool>(true));
  const auto full = sf::pinned_set(cg, 7, sf::VertexSubset::all(25));
  EXPECT_EQ(full.colors, (std::vector<std::int32_t>{1, 2, 3, 4}));
  EXPECT_FALSE(full.zero_realized.has_value());
  sf::Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    auto members = rng.sample(25, 1 + rng.below(24));
    const auto smaller = sf::pinned_set(cg, 3, sf::VertexSubset(25, members)).colors;
    members.push_back(rng.below(25));
    const auto larger = sf::pinned_set(cg, 3, sf::VertexSubset(25, members)).colors;
    EXPECT_TRUE(std::includes(larger.begin(), larger.end(), smaller.begin(), smaller.end()));
  }
}
