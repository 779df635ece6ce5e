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
#include "primesym/ratrec.hpp"

namespace primesym {
namespace {

TEST(Reconstruct, RoundTripOfSimpleFunction) {
  auto F = FieldSpec::of_order(2);
  const Poly den = pow(bracket(F, 1), 2);
  const auto s = series_from_rational(Poly::constant(F, 1), den, 20);
  const auto c = reconstruct(s, 5);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(c->num.is_one());
  EXPECT_EQ(c->den, den);
  EXPECT_EQ(c->matched_through, 20);
}

TEST(Reconstruct, RandomRationalsAreRecovered) {
  std::mt19937_64 rng(11);
  for (unsigned q : {2u, 3u, 4u}) {
    auto F = FieldSpec::of_order(q);
    for (int trial = 0; trial < 40; ++trial) {
      const long B = 1 + static_cast<long>(rng() % 6);
      const Poly den = oracle::random_monic(F, static_cast<unsigned>(1 + rng() % B), rng);
      const Poly num = oracle::random_poly(F, static_cast<unsigned>(den.degree() - 1 >= 0 ? den.degree() - 1 : 0), rng);
      if (num.is_zero()) continue;
      const Rational f(num, den);
      const auto c = reconstruct(series_from_rational(f, 2 * B + 1), B);
      ASSERT_TRUE(c.has_value()) << q << " " << f.to_string();
      EXPECT_EQ(c->value(), f);
    }
  }
}

TEST(Reconstruct, PolynomialPart) {
  auto F = FieldSpec::of_order(3);
  const Rational f(Poly(F, {1, 0, 2, 1}), Poly(F, {2, 1}));
  const auto c = reconstruct(series_from_rational(f, 12), 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->value(), f);
}

TEST(Reconstruct, HighDegreeGivesNone) {
  std::mt19937_64 rng(5);
  auto F = FieldSpec::of_order(2);
  const Poly den = oracle::random_monic(F, 40, rng);
  const Poly num = oracle::random_poly(F, 39, rng);
  EXPECT_FALSE(reconstruct(series_from_rational(num, den, 29), 5).has_value());
}

TEST(Reconstruct, InsufficientHorizonIsAnError) {
  auto F = FieldSpec::of_order(2);
  const auto s = series_from_rational(Poly::constant(F, 1), bracket(F, 1), 9);
  EXPECT_THROW(reconstruct(s, 5), HorizonError);
  EXPECT_EQ(default_max_deg(50), 24);
}

TEST(Reconstruct, FindsFamilyMemberFromEngineRun) {
  SumSpec spec;
  spec.field = FieldSpec::of_order(2);
  spec.k = 3;
  spec.d_max = 16;
  const auto r = accumulate(spec);
  const long h = spec.final_horizon();
  const auto c = reconstruct(r.total().truncated(h), default_max_deg(h));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->value(), Rational(Poly::constant(spec.field, 1), pow(bracket(spec.field, 1), 2)));
}

TEST(Formula, Evaluation) {
  auto F2 = FieldSpec::of_order(2);
  EXPECT_EQ(evaluate_formula("[2]", F2), Rational(bracket(F2, 2)));
  EXPECT_EQ(evaluate_formula("[n-1]^2/[1]^(2^n)", F2, {{"n", 2}}),
            Rational(Poly::constant(F2, 1), pow(bracket(F2, 1), 2)));
  EXPECT_EQ(evaluate_formula("(t^4+t+1)/([1][3])", F2),
            Rational(Poly(F2, {1, 1, 0, 0, 1}), bracket(F2, 1) * bracket(F2, 3)));
  EXPECT_EQ(evaluate_formula("-t + 2*t", FieldSpec::of_order(3)), Rational(Poly::t(FieldSpec::of_order(3))));
  EXPECT_TRUE(evaluate_formula("[0]", F2).is_zero());
  EXPECT_THROW(evaluate_formula("[1]/0", F2), UsageError);
  EXPECT_THROW(evaluate_formula("[x]", F2), UsageError);
  EXPECT_THROW(evaluate_formula("[1] )", F2), UsageError);
  EXPECT_EQ(evaluate_int("i*(q^n-1)-((q^(r+1)-q)/(q-1)-r)", {{"i", 2}, {"q", 4}, {"n", 2}, {"r", 1}}), 27);
  EXPECT_THROW(evaluate_int("7/2", {}), UsageError);
  EXPECT_THROW(evaluate_int("2^70", {}), BudgetExceeded);
}

class CatalogTest : public ::testing::Test {
 protected:
  Catalog cat = Catalog::builtin();
};

TEST_F(CatalogTest, PrintedEntries) {
  auto F2 = FieldSpec::of_order(2);
  auto F4 = FieldSpec::of_order(4);
  auto F8 = FieldSpec::of_order(8);
  EXPECT_EQ(cat.lookup(2, 7)->evaluate(F2), Rational(pow(bracket(F2, 2), 2), pow(bracket(F2, 1), 8)));
  EXPECT_EQ(cat.lookup(4, 57)->evaluate(F4), Rational(bracket(F4, 1), bracket(F4, 3)));
  EXPECT_EQ(cat.lookup(8, 49)->evaluate(F8), Rational(bracket(F8, 1), bracket(F8, 2)));
  EXPECT_EQ(cat.lookup(4, 21)->evaluate(F4), Rational(Poly::constant(F4, 1), pow(bracket(F4, 1), 6)));
  EXPECT_TRUE(cat.lookup(2, 1, SumKind::kConjA)->evaluate(F2).is_zero());
  EXPECT_FALSE(cat.lookup(2, 9).has_value());
  EXPECT_FALSE(cat.lookup(3, 2).has_value());
}

TEST_F(CatalogTest, Families) {
  for (std::uint64_t k : {3u, 15u, 27u, 63u, 111u, 123u}) {
    const auto m = cat.lookup(4, k);
    ASSERT_TRUE(m.has_value()) << k;
    EXPECT_EQ(m->entry.family, "C(ii)");
    EXPECT_TRUE(m->evaluate(FieldSpec::of_order(4)).is_zero());
  }
  EXPECT_EQ(cat.lookup(8, 7)->entry.family, "C(iii)");
  EXPECT_EQ(cat.lookup(16, 255)->entry.family, "C(iii)");
  auto F3 = FieldSpec::of_order(3);
  const auto d3 = cat.lookup(3, 8, SumKind::kGP);
  ASSERT_TRUE(d3.has_value());
  EXPECT_EQ(d3->evaluate(F3), Rational(Poly::constant(F3, 1), pow(bracket(F3, 1), 6)));
  EXPECT_EQ(cat.lookup(3, 2, SumKind::kGP)->entry.family, "D(i)");
  EXPECT_EQ(cat.lookup(9, 8, SumKind::kGP)->entry.family, "D(ii)");
}

TEST_F(CatalogTest, FrobeniusConsistency) {
  auto F2 = FieldSpec::of_order(2);
  for (unsigned n = 1; n <= 5; ++n) {
    const std::uint64_t k = (std::uint64_t{1} << n) - 1;
    const auto base = cat.lookup(2, k);
    const auto doubled = cat.lookup(2, 2 * k);
    ASSERT_TRUE(base && doubled);
    EXPECT_EQ(doubled->e, 1u);
    EXPECT_EQ(doubled->evaluate(F2), pow(base->evaluate(F2), 2));
  }
}

TEST_F(CatalogTest, JsonRoundTrip) {
  const Catalog again = Catalog::from_json(cat.to_json());
  EXPECT_EQ(again.to_json(), cat.to_json());
  EXPECT_THROW(Catalog::from_json(nlohmann::json::object()), UsageError);
  EXPECT_THROW(Catalog::from_json(nlohmann::json::parse(R"([{"q": 2}])")), UsageError);
}

TEST(ErrorValuation, FamilyAndMismatch) {
  SumSpec spec;
  spec.field = FieldSpec::of_order(2);
  spec.k = 3;
  spec.d_max = 16;
  const auto r = accumulate(spec);
  const auto good = error_valuation(r, Rational(Poly::constant(spec.field, 1), pow(bracket(spec.field, 1), 2)));
  EXPECT_FALSE(good.exact());
  EXPECT_EQ(good.value, 51);
  const auto bad = error_valuation(r, Rational(Poly::constant(spec.field, 1), bracket(spec.field, 1)));
  EXPECT_TRUE(bad.exact());
  EXPECT_EQ(bad.value, 2);
}

}  // namespace
}  // namespace primesym
