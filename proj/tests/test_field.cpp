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

#include "spectraff/field.hpp"
#include "spectraff/rng.hpp"

namespace sf = spectraff;

namespace {

// Independent model of F_p[t]/(t^2 + m1 t + m0) on coefficient pairs.
struct Quad {
  std::uint32_t p, m0, m1;  // modulus t^2 + m1 t + m0
  std::pair<std::uint32_t, std::uint32_t> mul(std::pair<std::uint32_t, std::uint32_t> a,
                                              std::pair<std::uint32_t, std::uint32_t> b) const {
    // (a0 + a1 t)(b0 + b1 t) with t^2 = -m1 t - m0
    const std::uint64_t c0 = a.first * b.first, c1 = a.first * b.second + a.second * b.first,
                        c2 = a.second * b.second;
    const std::uint64_t r0 = (c0 + c2 * (p - m0)) % p;
    const std::uint64_t r1 = (c1 + c2 * (p - m1)) % p;
    return {static_cast<std::uint32_t>(r0), static_cast<std::uint32_t>(r1)};
  }
};

bool has_root_quadratic(std::uint32_t p, std::uint32_t m0, std::uint32_t m1) {
  for (std::uint32_t x = 0; x < p; ++x) {
    if ((x * x + m1 * x + m0) % p == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Field, PrimeFieldThreeHasNuTwo) {
  const auto f = sf::build_field(3, 1);
  EXPECT_EQ(f->q(), 3u);
  EXPECT_EQ(f->nu().code, 2u);
  EXPECT_EQ(f->add(f->element(2), f->element(2)).code, 1u);
}

TEST(Field, SmallestPrimitiveElementByOrderScan) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    const auto f = sf::build_field_of_order(q);
    std::uint32_t first = 0;
    for (std::uint32_t c = 1; c < q && !first; ++c) {
      // order by repeated multiplication
      auto x = f->element(c);
      std::uint32_t ord = 1;
      while (x != f->one()) {
        x = f->mul(x, f->element(c));
        ++ord;
      }
      if (ord == q - 1) first = c;
    }
    EXPECT_EQ(f->nu().code, first) << "q=" << q;
  }
}

TEST(Field, NineHasModulusTSquaredPlusOne) {
  const auto f = sf::build_field(3, 2);
  EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Field, QuadraticModulusIsLexSmallestIrreducible) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    std::vector<std::uint32_t> want;
    // low-degree coefficient compared first: m0 outer, m1 inner
    for (std::uint32_t m0 = 0; m0 < p && want.empty(); ++m0) {
      for (std::uint32_t m1 = 0; m1 < p && want.empty(); ++m1) {
        if (!has_root_quadratic(p, m0, m1)) want = {m0, m1, 1};
      }
    }
    EXPECT_EQ(sf::build_field(p, 2)->modulus(), want) << "p=" << p;
  }
}

TEST(Field, MultiplicationMatchesIndependentQuadraticModel) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto f = sf::build_field(p, 2);
    const Quad model{p, f->modulus()[0], f->modulus()[1]};
    for (std::uint32_t a = 0; a < f->q(); ++a) {
      for (std::uint32_t b = 0; b < f->q(); ++b) {
        const auto r = model.mul({a % p, a / p}, {b % p, b / p});
        EXPECT_EQ(f->mul(f->element(a), f->element(b)).code, r.first + p * r.second);
        EXPECT_EQ(f->add(f->element(a), f->element(b)).code, (a % p + b % p) % p + p * ((a / p + b / p) % p));
      }
    }
  }
}

TEST(Field, OnePlusTTimesOneMinusTIsTwoInNine) {
  const auto f = sf::build_field(3, 2);
  const auto t = f->parse("0,1");
  const auto a = f->add(f->one(), t);
  const auto b = f->sub(f->one(), t);
  EXPECT_EQ(f->mul(a, b).code, 2u);
}

TEST(Field, RejectsEvenAndComposite) {
  EXPECT_THROW(sf::build_field(2, 1), std::invalid_argument);
  EXPECT_THROW(sf::build_field(9, 1), std::invalid_argument);
  EXPECT_THROW(sf::build_field_of_order(15), std::invalid_argument);
  EXPECT_THROW(sf::build_field(3, 20), sf::CapExceeded);
}

TEST(Field, InverseOfZeroThrows) {
  const auto f = sf::build_field(5, 1);
  EXPECT_THROW(f->inv(f->zero()), std::exception);
}

TEST(Field, AxiomsOnRandomTriples) {
  sf::Rng rng(7);
  for (std::uint32_t q : {3u, 7u, 9u, 25u, 27u, 49u, 121u, 125u}) {
    const auto f = sf::build_field_of_order(q);
    for (int i = 0; i < 300; ++i) {
      const auto a = f->element(rng.below(q)), b = f->element(rng.below(q)), c = f->element(rng.below(q));
      EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      EXPECT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
      EXPECT_EQ(f->mul(a, b), f->mul(b, a));
      EXPECT_EQ(f->add(a, f->neg(a)), f->zero());
      if (a != f->zero()) EXPECT_EQ(f->mul(a, f->inv(a)), f->one());
    }
  }
}

TEST(Field, PowMatchesRepeatedMultiplication) {
  const auto f = sf::build_field_of_order(27);
  for (std::uint32_t a = 0; a < 27; ++a) {
    auto x = f->one();
    for (std::uint64_t e = 0; e < 60; ++e) {
      EXPECT_EQ(f->pow(f->element(a), e), x);
      x = f->mul(x, f->element(a));
    }
  }
}

TEST(Field, FormatParseRoundTrip) {
  const auto f = sf::build_field_of_order(25);
  for (auto a : f->elements()) EXPECT_EQ(f->parse(f->format(a)), a);
}

TEST(Field, SquaresAreHalfOfUnits) {
  for (std::uint32_t q : {5u, 9u, 13u, 27u}) {
    const auto f = sf::build_field_of_order(q);
    std::set<std::uint32_t> squares;
    for (std::uint32_t a = 1; a < q; ++a) squares.insert(f->mul(f->element(a), f->element(a)).code);
    for (std::uint32_t a = 1; a < q; ++a) EXPECT_EQ(f->is_square(f->element(a)), squares.count(a) == 1);
    EXPECT_FALSE(f->is_square(f->zero()));
  }
}

TEST(Extension, FrobeniusFixesBaseAndHasOrderN) {
  sf::Rng rng(11);
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {3, 3}, {5, 2}, {9, 2}, {5, 3}}) {
    const auto ext = sf::build_extension(sf::build_field_of_order(q), n);
    for (std::uint32_t c = 0; c < q; ++c) {
      const auto x = ext->embed(ext->base().element(c));
      EXPECT_EQ(ext->frobenius(x), x);
    }
    for (int i = 0; i < 50; ++i) {
      const auto x = ext->element(rng.below(ext->size()));
      auto y = x;
      for (std::uint32_t k = 0; k < n; ++k) y = ext->frobenius(y);
      EXPECT_EQ(y, x);
      EXPECT_EQ(ext->frobenius(x), ext->pow(x, q));
    }
  }
}

TEST(Extension, FrobeniusOfTInNineIsMinusT) {
  const auto ext = sf::build_extension(sf::build_field(3, 1), 2);
  const auto t = ext->parse("0,1");
  EXPECT_EQ(ext->frobenius(t), ext->neg(t));
}

TEST(Extension, NormOfAPlusBTIsSumOfSquaresInNine) {
  const auto ext = sf::build_extension(sf::build_field(3, 1), 2);
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) {
      const sf::FqElement coeffs[] = {{a}, {b}};
      EXPECT_EQ(ext->norm(ext->from_coeffs(coeffs)).code, (a * a + b * b) % 3);
    }
  }
  EXPECT_EQ(ext->norm(ext->one()).code, 1u);
}

TEST(Extension, NormFiberOfOneInNine) {
  const auto ext = sf::build_extension(sf::build_field(3, 1), 2);
  std::set<std::string> fiber;
  for (std::uint32_t x = 0; x < 9; ++x) {
    if (ext->norm({x}).code == 1) fiber.insert(ext->format({x}));
  }
  EXPECT_EQ(fiber, (std::set<std::string>{"1,0", "2,0", "0,1", "0,2"}));
}

TEST(Extension, NormIsPowerMultiplicativeFrobeniusInvariantWithHilbert90Fibers) {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {3, 2}, {3, 3}, {5, 2}, {9, 2}, {3, 4}, {3, 5}, {27, 2}, {7, 3}}) {
    const auto ext = sf::build_extension(sf::build_field_of_order(q), n);
    std::uint64_t qn = 1;
    for (std::uint32_t i = 0; i < n; ++i) qn *= q;
    const std::uint64_t e = (qn - 1) / (q - 1);
    EXPECT_EQ(ext->norm_fiber_size(), e);
    std::map<std::uint32_t, std::uint64_t> fibers;
    for (std::uint32_t x = 0; x < ext->size(); ++x) {
      const auto nx = ext->norm({x});
      ++fibers[nx.code];
      if (x) {
        const auto p = ext->pow({x}, e);
        ASSERT_TRUE(ext->to_base(p).has_value());
        EXPECT_EQ(*ext->to_base(p), nx);
      }
      EXPECT_EQ(ext->norm(ext->frobenius({x})), nx);
    }
    EXPECT_EQ(fibers[0], 1u);
    for (std::uint32_t l = 1; l < q; ++l) EXPECT_EQ(fibers[l], e) << "q=" << q << " n=" << n;
    if (ext->size() <= 729) {
      for (std::uint32_t x = 0; x < ext->size(); x += 1) {
        for (std::uint32_t y = 0; y < ext->size(); y += 7) {
          EXPECT_EQ(ext->norm(ext->mul({x}, {y})), ext->base().mul(ext->norm({x}), ext->norm({y})));
        }
      }
    }
  }
}

TEST(Extension, DescriptorRoundTrips) {
  const auto f = sf::build_field_of_order(9);
  const auto ext = sf::build_extension(f, 2);
  const auto desc = sf::context_descriptor(*f, ext.get());
  EXPECT_EQ(desc.at("p"), 3);
  EXPECT_EQ(desc.at("r"), 2);
  const auto built = sf::context_from_descriptor(desc);
  EXPECT_EQ(built.ext->modulus(), ext->modulus());
  auto bad = desc;
  bad["modulus_coeffs"] = {2, 0, 1};
  EXPECT_THROW(sf::context_from_descriptor(bad), std::invalid_argument);
}
