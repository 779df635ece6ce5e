// Copyright 2026 The primesym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "primesym/error.hpp"
#include "primesym/laurent.hpp"

namespace primesym {
namespace {

LaurentSeries S(const FieldPtr& F, long first, std::vector<Elem> c, long h) {
  return LaurentSeries::from_dense(F, first, std::move(c), h);
}

TEST(SeriesFromRational, GeometricSeries) {
  auto F = FieldSpec::of_order(2);
  const auto s = series_from_rational(Poly::constant(F, 1), Poly(F, {1, 1}), 5);
  EXPECT_EQ(s.first_index(), 1);
  for (long j = 1; j <= 5; ++j) EXPECT_EQ(s.coefficient(j), 1);
  EXPECT_THROW(s.coefficient(6), HorizonError);
}

TEST(SeriesFromRational, ReciprocalOfBracketOne) {
  auto F = FieldSpec::of_order(2);
  const auto s = series_from_rational(Poly::constant(F, 1), bracket(F, 1), 5);
  EXPECT_EQ(s.first_index(), 2);
  EXPECT_EQ(s.coeffs(), (std::vector<Elem>{1, 1, 1, 1}));
}

TEST(SeriesFromRational, TOverTIsOne) {
  for (unsigned q : {2u, 3u, 7u}) {
    auto F = FieldSpec::of_order(q);
    const auto s = series_from_rational(Poly::t(F), Poly::t(F), 3);
    const auto v = s.valuation();
    EXPECT_TRUE(v.exact());
    EXPECT_EQ(v.value, 0);
    EXPECT_EQ(s.coeffs(), (std::vector<Elem>{1, 0, 0, 0}));
  }
}

TEST(SeriesFromRational, ZeroDenominatorThrows) {
  auto F = FieldSpec::of_order(3);
  EXPECT_THROW(series_from_rational(Poly::t(F), Poly(F), 4), DivisionByZero);
}

TEST(SeriesFromRational, MatchesLongDivisionOracle) {
  std::mt19937_64 rng(101);
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    auto F = FieldSpec::of_order(q);
    for (int it = 0; it < 40; ++it) {
      const Poly num = oracle::random_poly(F, rng() % 8, rng);
      const Poly den = oracle::random_poly(F, 1 + rng() % 8, rng);
      if (num.is_zero() || den.is_zero()) continue;
      const long h = static_cast<long>(rng() % 40);
      const auto s = series_from_rational(num, den, h);
      const auto ref = oracle::expand_rational(*F, num.coeffs(), den.coeffs(), h);
      for (long j = -num.degree(); j <= h; ++j) {
        const auto found = ref.find(j);
        ASSERT_EQ(s.coefficient(j), found == ref.end() ? Elem{0} : found->second) << "j=" << j;
      }
    }
  }
}

TEST(SeriesArith, CharTwoSquareOfOnePlusTInverse) {
  auto F = FieldSpec::of_order(2);
  const auto a = S(F, 0, {1, 1, 0, 0, 0}, 4);
  const auto sq = a * a;
  EXPECT_EQ(sq.horizon(), 4);
  EXPECT_EQ(sq.coeffs(), (std::vector<Elem>{1, 0, 1, 0, 0}));
}

TEST(SeriesArith, InverseOfOneMinusTInverse) {
  auto F = FieldSpec::of_order(5);
  const auto a = S(F, 0, {1, F->neg(1), 0, 0, 0, 0, 0}, 6);
  const auto inv = inverse(a);
  EXPECT_EQ(inv.horizon(), 6);
  for (long j = 0; j <= 6; ++j) EXPECT_EQ(inv.coefficient(j), 1);
}

TEST(SeriesArith, PowMatchesRational) {
  auto F = FieldSpec::of_order(2);
  const auto s = series_from_rational(Poly::constant(F, 1), bracket(F, 1), 30);
  const auto sq = pow(s, 2);
  const auto ref = series_from_rational(Poly::constant(F, 1), pow(bracket(F, 1), 2), 60);
  EXPECT_EQ(sq.horizon(), 32);  // h + v
  EXPECT_TRUE(sq.agrees_with(ref, sq.horizon()));
}

TEST(SeriesArith, NewtonMatchesSchoolbook) {
  std::mt19937_64 rng(5);
  for (unsigned q : {2u, 3u, 4u, 7u, 16u}) {
    auto F = FieldSpec::of_order(q);
    for (int it = 0; it < 20; ++it) {
      std::vector<Elem> c(1 + rng() % 60);
      for (auto& x : c) x = static_cast<Elem>(rng() % q);
      c[0] = static_cast<Elem>(1 + rng() % (q - 1));
      const long first = static_cast<long>(rng() % 9) - 4;
      const auto a = S(F, first, c, first + static_cast<long>(c.size()) - 1);
      const auto n = inverse(a);
      const auto sb = inverse_schoolbook(a);
      EXPECT_TRUE(n.identical(sb));
      EXPECT_EQ(n.horizon(), a.horizon() - 2 * first);
      const auto one = a * n;
      EXPECT_EQ(one.first_index(), 0);
      for (long j = 1; j <= one.horizon(); ++j) EXPECT_EQ(one.coefficient(j), 0);
    }
  }
}

TEST(SeriesArith, InverseOfZeroToHorizonThrows) {
  auto F = FieldSpec::of_order(3);
  EXPECT_THROW(inverse(LaurentSeries::zero(F, 10)), HorizonError);
}

TEST(SeriesArith, RationalTimesReciprocalIsOne) {
  std::mt19937_64 rng(9);
  for (unsigned q : {2u, 3u, 4u}) {
    auto F = FieldSpec::of_order(q);
    for (int it = 0; it < 30; ++it) {
      const Poly num = oracle::random_poly(F, 1 + rng() % 6, rng);
      const Poly den = oracle::random_poly(F, 1 + rng() % 6, rng);
      if (num.is_zero() || den.is_zero()) continue;
      const long h = 20;
      const auto prod = series_from_rational(num, den, h) * series_from_rational(den, num, h);
      EXPECT_GE(prod.horizon(), h - std::abs(num.degree() - den.degree()));
      EXPECT_EQ(prod.first_index(), 0);
      EXPECT_EQ(prod.coefficient(0), 1);
      for (long j = 1; j <= prod.horizon(); ++j) ASSERT_EQ(prod.coefficient(j), 0);
    }
  }
}

TEST(SeriesArith, HorizonSoundness) {
  std::mt19937_64 rng(13);
  auto F = FieldSpec::of_order(3);
  for (int it = 0; it < 30; ++it) {
    const Poly num = oracle::random_poly(F, 4, rng);
    const Poly den = oracle::random_monic(F, 5, rng);
    if (num.is_zero()) continue;
    const auto small = series_from_rational(num, den, 15);
    const auto big = series_from_rational(num, den, 60);
    EXPECT_TRUE(big.truncated(15).identical(small));
    const auto a = small * small;
    const auto b = big * big;
    EXPECT_TRUE(b.agrees_with(a, a.horizon()));
  }
}

TEST(SeriesArith, ProductHorizonRule) {
  auto F = FieldSpec::of_order(2);
  const auto a = S(F, 3, {1, 1}, 10);   // v=3, h=10
  const auto b = S(F, -2, {1}, 4);      // v=-2, h=4
  EXPECT_EQ((a * b).horizon(), std::min(10 - 2, 4 + 3));
}

TEST(SeriesArith, PolyMultiplyAndDivide) {
  auto F = FieldSpec::of_order(4);
  const Poly f(F, {1, 2, 0, 1});
  const auto s = series_from_rational(Poly::constant(F, 1), bracket(F, 1), 40);
  const auto up = mul_poly(s, f);
  EXPECT_EQ(up.horizon(), 37);
  const auto back = div_poly(up, f);
  EXPECT_EQ(back.horizon(), 40);
  EXPECT_TRUE(back.agrees_with(s, 40));
  const auto ref = series_from_rational(f, bracket(F, 1), 37);
  EXPECT_TRUE(up.agrees_with(ref, 37));
}

TEST(SeriesArith, FieldMismatchThrows) {
  auto F = FieldSpec::of_order(8);
  auto G = FieldSpec::of_order(8, 13);
  EXPECT_THROW(LaurentSeries::zero(F, 3) + LaurentSeries::zero(G, 3), FieldMismatch);
}

TEST(SeriesFrobenius, MatchesPthPower) {
  std::mt19937_64 rng(4);
  for (unsigned q : {2u, 3u, 4u, 9u}) {
    auto F = FieldSpec::of_order(q);
    const Poly num = oracle::random_poly(F, 3, rng);
    const Poly den = oracle::random_monic(F, 4, rng);
    if (num.is_zero()) continue;
    const auto s = series_from_rational(num, den, 20);
    const auto fr = s.frobenius_power(1);
    EXPECT_EQ(fr.horizon(), static_cast<long>(F->p()) * 21 - 1);
    const auto ref = series_from_rational(num.frobenius_power(1), den.frobenius_power(1), fr.horizon());
    EXPECT_TRUE(fr.identical(ref));
  }
}

TEST(Valuation, ExactAndLowerBound) {
  auto F = FieldSpec::of_order(3);
  const auto z = LaurentSeries::zero(F, 12);
  EXPECT_FALSE(z.valuation().exact());
  EXPECT_EQ(z.valuation().value, 13);
  EXPECT_EQ(z.valuation().to_string(), ">= 13");
  const auto s = S(F, 4, {2, 1}, 9);
  EXPECT_TRUE(s.valuation().exact());
  EXPECT_EQ(s.valuation().value, 4);
  EXPECT_EQ(*s.valuation().witness, 2);
}

TEST(Json, BitExactRoundTrip) {
  std::mt19937_64 rng(31);
  for (unsigned q : {2u, 4u, 27u, 256u}) {
    auto F = FieldSpec::of_order(q);
    const auto s = series_from_rational(oracle::random_poly(F, 5, rng) + Poly::constant(F, 1),
                                        oracle::random_monic(F, 7, rng), 50);
    const auto j = s.to_json();
    EXPECT_EQ(j.at("field"), F->name());
    EXPECT_TRUE(LaurentSeries::from_json(nlohmann::json::parse(j.dump())).identical(s));
  }
  EXPECT_THROW(LaurentSeries::from_json(nlohmann::json{{"field", "2^1/3"}}), UsageError);
}

}  // namespace
}  // namespace primesym
