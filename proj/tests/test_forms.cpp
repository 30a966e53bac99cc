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

#include <set>

#include "spectraff/forms.hpp"
#include "spectraff/rng.hpp"

namespace sf = spectraff;

namespace {

std::vector<sf::FqElement> vec(std::initializer_list<std::uint32_t> codes) {
  std::vector<sf::FqElement> out;
  for (auto c : codes) out.push_back({c});
  return out;
}

// Determinant by cofactor expansion over plain integers mod p (prime fields).
std::int64_t det_mod(const std::vector<std::vector<std::int64_t>>& m, std::int64_t p) {
  const std::size_t n = m.size();
  if (n == 1) return ((m[0][0] % p) + p) % p;
  std::int64_t acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    const std::int64_t term = m[0][c] * det_mod(minor, p) % p;
    acc = (acc + (c % 2 ? p - term : term)) % p;
  }
  return acc;
}

}  // namespace

TEST(Forms, IdentityAndHyperbolicAcceptedDegenerateRejected) {
  const auto f = sf::build_field(3, 1);
  EXPECT_NO_THROW(sf::make_form(f, sf::FqMatrix::identity(*f, 2), sf::FormKind::quadratic));
  const auto hyp = sf::make_form(f, sf::FqMatrix::from_codes(*f, {{0, 1}, {1, 0}}), sf::FormKind::quadratic);
  const auto& q = std::get<sf::QuadraticForm>(hyp);
  // Q(x) = 2 x1 x2
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) EXPECT_EQ(q.eval(vec({a, b})).code, 2 * a * b % 3);
  }
  EXPECT_THROW(sf::make_form(f, sf::FqMatrix::from_codes(*f, {{1, 0}, {0, 0}}), sf::FormKind::bilinear),
               std::invalid_argument);
  EXPECT_THROW(sf::make_form(f, sf::FqMatrix::from_codes(*f, {{1, 1}, {0, 1}}), sf::FormKind::quadratic),
               std::invalid_argument);
  EXPECT_NO_THROW(sf::make_form(f, sf::FqMatrix::from_codes(*f, {{1, 1}, {0, 1}}), sf::FormKind::bilinear));
}

TEST(Forms, DeterminantMatchesCofactorOracle) {
  sf::Rng rng(3);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto f = sf::build_field(p, 1);
    for (int i = 0; i < 200; ++i) {
      const std::uint32_t d = 1 + rng.below(4);
      std::vector<std::vector<std::uint32_t>> rows(d, std::vector<std::uint32_t>(d));
      std::vector<std::vector<std::int64_t>> irows(d, std::vector<std::int64_t>(d));
      for (std::uint32_t r = 0; r < d; ++r) {
        for (std::uint32_t c = 0; c < d; ++c) irows[r][c] = rows[r][c] = rng.below(p);
      }
      EXPECT_EQ(sf::determinant(*f, sf::FqMatrix::from_codes(*f, rows)).code, det_mod(irows, p));
    }
  }
}

TEST(Forms, EvalExamples) {
  const auto f = sf::build_field(3, 1);
  const auto dot = sf::BilinearForm(f, sf::FqMatrix::identity(*f, 2));
  EXPECT_EQ(dot.eval(vec({1, 0}), vec({1, 0})).code, 1u);
  const auto sos = sf::sum_of_squares(f, 2);
  EXPECT_EQ(sos.eval(vec({1, 1})).code, 2u);
  EXPECT_THROW(sos.eval(vec({1, 1, 1})), std::invalid_argument);
}

TEST(Forms, BilinearityOnRandomTriples) {
  sf::Rng rng(5);
  const auto f = sf::build_field_of_order(9);
  const sf::VectorSpace space(f, 3);
  const auto b = sf::skew_form(f, 3).bilinear();
  for (int i = 0; i < 500; ++i) {
    const auto x = space.decode(rng.below(space.size()));
    const auto y = space.decode(rng.below(space.size()));
    const auto z = space.decode(rng.below(space.size()));
    const auto a = f->element(rng.below(9));
    EXPECT_EQ(b.eval(space.scale(a, x), y), f->mul(a, b.eval(x, y)));
    EXPECT_EQ(b.eval(space.add(x, z), y), f->add(b.eval(x, y), b.eval(z, y)));
  }
}

TEST(Forms, SphereExampleAndPartition) {
  const auto f = sf::build_field(3, 1);
  const auto q = sf::sum_of_squares(f, 2);
  const sf::VectorSpace space(f, 2);
  const auto s = sf::sphere(q, f->one());
  std::set<std::vector<std::uint32_t>> pts;
  for (auto c : s.points) {
    std::vector<std::uint32_t> v;
    for (auto e : space.decode(c)) v.push_back(e.code);
    pts.insert(v);
  }
  EXPECT_EQ(pts, (std::set<std::vector<std::uint32_t>>{{0, 1}, {0, 2}, {1, 0}, {2, 0}}));

  for (std::uint32_t qq : {3u, 5u, 9u, 11u}) {
    const auto g = sf::build_field_of_order(qq);
    for (std::uint32_t d : {2u, 3u}) {
      const auto form = sf::skew_form(g, d);
      const sf::VectorSpace sp(g, d);
      std::size_t total = 0;
      for (std::uint32_t r = 0; r < qq; ++r) {
        const auto sph = sf::sphere(form, g->element(r));
        total += sph.points.size();
        for (auto c : sph.points) EXPECT_EQ(form.eval(sp.decode(c)).code, r);
        if (r == 0) EXPECT_EQ(sph.points.front(), 0u);
      }
      EXPECT_EQ(total, sp.size());
    }
  }
}

TEST(Forms, SphereRespectsCap) {
  sf::Caps caps;
  caps.max_field_size = 100;
  const auto f = sf::build_field(11, 1);
  EXPECT_THROW(sf::sphere(sf::sum_of_squares(f, 2), f->one(), caps), sf::CapExceeded);
}

TEST(Forms, PolarizationIsSymmetricBilinearExhaustive) {
  for (std::uint32_t qq : {3u, 5u}) {
    const auto f = sf::build_field_of_order(qq);
    for (std::uint32_t d : {2u}) {
      const auto q = sf::skew_form(f, d);
      const sf::VectorSpace space(f, d);
      for (std::uint32_t i = 0; i < space.size(); ++i) {
        for (std::uint32_t j = 0; j < space.size(); ++j) {
          const auto x = space.decode(i), y = space.decode(j);
          const auto lhs = f->sub(f->sub(q.eval(space.add(x, y)), q.eval(x)), q.eval(y));
          EXPECT_EQ(lhs, f->add(q.polar(x, y), q.polar(x, y)));
          EXPECT_EQ(q.polar(x, y), q.polar(y, x));
        }
      }
    }
  }
  // q^d = 625
  const auto f = sf::build_field(5, 1);
  const auto q = sf::sum_of_squares(f, 4);
  const sf::VectorSpace space(f, 4);
  for (std::uint32_t i = 0; i < space.size(); i += 3) {
    for (std::uint32_t j = 0; j < space.size(); j += 5) {
      const auto x = space.decode(i), y = space.decode(j);
      EXPECT_EQ(f->sub(f->sub(q.eval(space.add(x, y)), q.eval(x)), q.eval(y)),
                f->add(q.polar(x, y), q.polar(x, y)));
    }
  }
}

TEST(Forms, ClassifyLine) {
  const auto f5 = sf::build_field(5, 1);
  const auto q5 = sf::sum_of_squares(f5, 2);
  EXPECT_EQ(sf::classify_line(q5, vec({1, 0})), sf::LineType::square);
  EXPECT_EQ(sf::classify_line(q5, vec({1, 2})), sf::LineType::isotropic);
  EXPECT_THROW(sf::classify_line(q5, vec({0, 0})), std::invalid_argument);

  for (std::uint32_t qq : {5u, 7u, 9u}) {
    const auto f = sf::build_field_of_order(qq);
    const auto q = sf::skew_form(f, 3);
    const sf::VectorSpace space(f, 3);
    for (std::uint32_t i = 1; i < space.size(); ++i) {
      const auto x = space.decode(i);
      const auto type = sf::classify_line(q, x);
      const auto qx = q.eval(x);
      EXPECT_EQ(type, qx == f->zero()          ? sf::LineType::isotropic
                      : f->is_square(qx)       ? sf::LineType::square
                                               : sf::LineType::nonsquare);
      const auto rep = sf::canonical_line_rep(space, x);
      std::uint32_t smallest = space.size();
      for (std::uint32_t c = 1; c < qq; ++c) {
        const auto y = space.scale(f->element(c), x);
        EXPECT_EQ(sf::classify_line(q, y), type);
        EXPECT_EQ(sf::canonical_line_rep(space, y), rep);
        smallest = std::min(smallest, space.encode(y));
      }
      EXPECT_EQ(space.encode(rep), smallest);
    }
  }
}

TEST(Forms, SkewFormIsNonDiagonalAndNondegenerate) {
  for (std::uint32_t qq : {3u, 5u, 9u, 13u}) {
    const auto f = sf::build_field_of_order(qq);
    const auto q = sf::skew_form(f, 3);
    EXPECT_NE(q.matrix().at(0, 1), f->zero());
    EXPECT_NE(sf::determinant(*f, q.matrix()), f->zero());
  }
}
