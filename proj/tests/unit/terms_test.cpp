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
#include "primesym/primes.hpp"
#include "primesym/terms.hpp"

namespace primesym {
namespace {

// Oracle: G_p(P^{-k}) and 1/(1 - P^k) by long division on naive polynomial
// powers.
std::map<long, Elem> oracle_term(const Poly& P, std::uint64_t k, SumKind kind, long h) {
  const FieldSpec& F = *P.field();
  Poly Pk = Poly::constant(P.field(), 1);
  for (std::uint64_t i = 0; i < k; ++i) Pk = multiply_schoolbook(Pk, P);
  if (kind == SumKind::kConjA) {
    return oracle::expand_rational(F, {1}, (P + Poly::constant(P.field(), 1)).coeffs(), h);
  }
  if (kind == SumKind::kPK) {
    return oracle::expand_rational(F, {F.neg(1)}, (Pk - Poly::constant(P.field(), 1)).coeffs(), h);
  }
  // G_p(u) = u/(1-u)^2 for p = 3, u/(1-u) for p = 2.
  const Poly one = Poly::constant(P.field(), 1);
  if (F.p() == 2) return oracle::expand_rational(F, {1}, (Pk - one).coeffs(), h);
  if (F.p() == 3) {
    const Poly d = Pk - one;
    return oracle::expand_rational(F, Pk.coeffs(), multiply_schoolbook(d, d).coeffs(), h);
  }
  throw std::logic_error("oracle covers p = 2, 3 only");
}

void expect_term(const Poly& P, std::uint64_t k, SumKind kind, long h, TermStrategy st) {
  const auto s = reciprocal_prime_term(P, k, kind, h, st);
  const auto ref = oracle_term(P, k, kind, h);
  ASSERT_EQ(s.horizon(), h);
  for (long j = 0; j <= h; ++j) {
    const auto it = ref.find(j);
    ASSERT_EQ(s.coefficient(j), it == ref.end() ? Elem{0} : it->second)
        << P.to_string() << " k=" << k << " kind=" << to_string(kind) << " strategy=" << to_string(st)
        << " j=" << j;
  }
}

TEST(GpNumerator, SmallPrimes) {
  EXPECT_EQ(gp_numerator(2), (std::vector<unsigned>{0, 1, 1}));
  EXPECT_EQ(gp_numerator(3), (std::vector<unsigned>{0, 1, 2, 0}));
  EXPECT_EQ(gp_numerator(5), (std::vector<unsigned>{0, 1, 3, 2, 4, 0}));
}

TEST(ReciprocalTerm, ConjAForTIsGeometric) {
  auto F = FieldSpec::of_order(2);
  const auto s = reciprocal_prime_term(Poly::t(F), 1, SumKind::kConjA, 8);
  EXPECT_EQ(s.first_index(), 1);
  for (long j = 1; j <= 8; ++j) EXPECT_EQ(s.coefficient(j), 1);
}

TEST(ReciprocalTerm, AllStrategiesMatchOracle) {
  std::mt19937_64 rng(77);
  for (unsigned q : {2u, 3u, 4u, 8u, 9u}) {
    auto F = FieldSpec::of_order(q);
    for (unsigned d = 1; d <= 3; ++d) {
      const auto primes = primes_of_degree(F, d);
      for (int it = 0; it < 4; ++it) {
        const Poly& P = primes[rng() % primes.size()];
        for (std::uint64_t k : {1ull, 2ull, 3ull, 5ull, 7ull, 8ull, 15ull}) {
          const long h = static_cast<long>(k * d) * 3 + static_cast<long>(rng() % 20);
          for (TermStrategy st : {TermStrategy::kReference, TermStrategy::kFrobeniusHorner,
                                  TermStrategy::kSparseDenominator, TermStrategy::kAuto}) {
            expect_term(P, k, SumKind::kPK, h, st);
            if (st != TermStrategy::kSparseDenominator && F->p() <= 3) {
              expect_term(P, k, SumKind::kGP, h, st);
            }
          }
        }
        expect_term(P, 1, SumKind::kConjA, 25, TermStrategy::kAuto);
      }
    }
  }
}

TEST(ReciprocalTerm, GpCoincidesWithPkInCharacteristicTwo) {
  auto F = FieldSpec::of_order(4);
  for (const Poly& P : primes_of_degree(F, 2)) {
    for (std::uint64_t k : {1ull, 3ull, 5ull}) {
      const auto a = reciprocal_prime_term(P, k, SumKind::kGP, 60);
      const auto b = reciprocal_prime_term(P, k, SumKind::kPK, 60);
      EXPECT_TRUE(a.identical(b));
    }
  }
}

TEST(ReciprocalTerm, ValuationIsKTimesDegree) {
  std::mt19937_64 rng(3);
  for (unsigned q : {2u, 3u, 5u, 16u}) {
    auto F = FieldSpec::of_order(q);
    for (int it = 0; it < 20; ++it) {
      const unsigned d = 1 + static_cast<unsigned>(rng() % 4);
      const Poly P = oracle::random_monic(F, d, rng);
      const std::uint64_t k = 1 + rng() % 40;
      const auto v = reciprocal_prime_term(P, k, SumKind::kPK, static_cast<long>(k * d) + 5).valuation();
      EXPECT_TRUE(v.exact());
      EXPECT_EQ(v.value, static_cast<long>(k * d));
      const auto w = reciprocal_prime_term(P, 1, SumKind::kConjA, d + 3).valuation();
      EXPECT_EQ(w.value, static_cast<long>(d));
    }
  }
}

TEST(ReciprocalTerm, LargeKSparseMatchesHorner) {
  auto F = FieldSpec::of_order(16);
  const auto primes = primes_of_degree(F, 2);
  for (std::size_t i = 0; i < primes.size(); i += 17) {
    const auto a = reciprocal_prime_term(primes[i], 255, SumKind::kPK, 1400, TermStrategy::kSparseDenominator);
    const auto b = reciprocal_prime_term(primes[i], 255, SumKind::kPK, 1400, TermStrategy::kFrobeniusHorner);
    EXPECT_TRUE(a.identical(b));
  }
}

TEST(ReciprocalTerm, BelowValuationIsZero) {
  auto F = FieldSpec::of_order(3);
  const auto s = reciprocal_prime_term(Poly(F, {1, 0, 1}), 4, SumKind::kPK, 7);
  EXPECT_TRUE(s.is_zero_to_horizon());
  EXPECT_EQ(s.valuation().value, 8);
}

TEST(ReciprocalTerm, RejectsPowerKindAndNonMonic) {
  auto F = FieldSpec::of_order(3);
  EXPECT_THROW(reciprocal_prime_term(Poly(F, {1, 1}), 1, SumKind::kPower, 4), UsageError);
  EXPECT_THROW(reciprocal_prime_term(Poly(F, {1, 2}), 1, SumKind::kPK, 4), UsageError);
  EXPECT_THROW(reciprocal_prime_term(Poly(F, {1, 1}), 1, SumKind::kGP, 4, TermStrategy::kSparseDenominator),
               UsageError);
}

TEST(SumKindNames, ParseRoundTrip) {
  for (SumKind k : {SumKind::kConjA, SumKind::kPK, SumKind::kGP, SumKind::kPower}) {
    EXPECT_EQ(parse_sum_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_sum_kind("conj-a"), SumKind::kConjA);
  EXPECT_THROW(parse_sum_kind("zeta"), UsageError);
}

}  // namespace
}  // namespace primesym
