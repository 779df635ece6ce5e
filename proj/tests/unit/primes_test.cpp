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

#include "oracle.hpp"
#include "primesym/error.hpp"
#include "primesym/primes.hpp"

namespace primesym {
namespace {

std::vector<std::string> names(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

TEST(CountIrreducibles, KnownValues) {
  EXPECT_EQ(count_irreducibles(2, 2), 1u);
  EXPECT_EQ(count_irreducibles(2, 3), 2u);
  EXPECT_EQ(count_irreducibles(16, 3), 1360u);
  EXPECT_EQ(count_irreducibles(2, 24), 698870u);
  EXPECT_THROW(count_irreducibles(2, 0), UsageError);
}

TEST(PrimeStreamTest, SmallListings) {
  auto F2 = FieldSpec::of_order(2);
  EXPECT_EQ(names(primes_of_degree(F2, 1)), (std::vector<std::string>{"t", "t + 1"}));
  EXPECT_EQ(names(primes_of_degree(F2, 3)),
            (std::vector<std::string>{"t^3 + t + 1", "t^3 + t^2 + 1"}));
  auto F4 = FieldSpec::of_order(4);
  EXPECT_EQ(primes_of_degree(F4, 1).size(), 4u);
}

TEST(PrimeStreamTest, CountMatchesFormula) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    auto F = FieldSpec::of_order(q);
    for (unsigned d = 1; tail_space(q, d) <= (1u << 16); ++d) {
      PrimeStream s(F, d);
      const std::uint64_t n = s.for_each([](const std::vector<Elem>&) {});
      EXPECT_EQ(n, count_irreducibles(q, d)) << "q=" << q << " d=" << d;
    }
  }
}

TEST(PrimeStreamTest, SieveAgreesWithTest) {
  for (unsigned q : {2u, 3u, 4u, 5u, 8u}) {
    auto F = FieldSpec::of_order(q);
    for (unsigned d = 1; tail_space(q, d) <= (q == 2 ? (1u << 14) : 4096u); ++d) {
      std::vector<Poly> a = primes_of_degree(F, d, EnumMode::kSieve);
      std::vector<Poly> b = primes_of_degree(F, d, EnumMode::kTest);
      ASSERT_EQ(a.size(), b.size()) << "q=" << q << " d=" << d;
      for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]);
    }
  }
}

TEST(PrimeStreamTest, AscendingAndIrreducible) {
  auto F = FieldSpec::of_order(3);
  const auto ps = primes_of_degree(F, 5);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_TRUE(oracle::irreducible_by_trial(ps[i]));
    if (i > 0) EXPECT_LT(ps[i - 1].encode(), ps[i].encode());
  }
}

TEST(PrimeStreamTest, SplitCoversRangeExactlyOnce) {
  auto F = FieldSpec::of_order(2);
  PrimeStream whole(F, 12);
  std::vector<Poly> all;
  while (auto p = whole.next()) all.push_back(*p);
  std::vector<Poly> joined;
  for (auto part : PrimeStream(F, 12).split(7)) {
    part.for_each([&](const std::vector<Elem>& c) { joined.emplace_back(F, c); });
  }
  ASSERT_EQ(all.size(), joined.size());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], joined[i]);
}

TEST(PrimeStreamTest, SubrangeIsResumable) {
  auto F = FieldSpec::of_order(3);
  PrimeStream s(F, 6);
  std::vector<Poly> first;
  for (int i = 0; i < 10; ++i) first.push_back(*s.next());
  PrimeStream rest = PrimeStream(F, 6).subrange(s.cursor(), s.end_tail());
  std::vector<Poly> all = primes_of_degree(F, 6);
  std::size_t idx = 10;
  rest.for_each([&](const std::vector<Elem>& c) { EXPECT_EQ(Poly(F, c), all[idx++]); });
  EXPECT_EQ(idx, all.size());
}

TEST(ProductPrimes, EqualsBracket) {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    auto F = FieldSpec::of_order(q);
    for (unsigned n = 1; tail_space(q, n) <= 4096; ++n) {
      EXPECT_EQ(product_primes_dividing(F, n), bracket(F, n)) << "q=" << q << " n=" << n;
    }
  }
  auto F2 = FieldSpec::of_order(2);
  EXPECT_EQ(product_primes_dividing(F2, 2), Poly(F2, {0, 1, 0, 0, 1}));
}

TEST(TailSpace, Overflow) {
  EXPECT_THROW(tail_space(256, 8), BudgetExceeded);
  EXPECT_EQ(tail_space(16, 4), 65536u);
}

}  // namespace
}  // namespace primesym
