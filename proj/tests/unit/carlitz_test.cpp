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

#include <thread>

#include "primesym/carlitz.hpp"
#include "primesym/error.hpp"

namespace primesym {
namespace {

class CarlitzQ2 : public ::testing::Test {
 protected:
  FieldPtr F = FieldSpec::of_order(2);
  CarlitzSeq seq{F};
  Poly br(unsigned n) const { return bracket(F, n); }
};

TEST_F(CarlitzQ2, SmallValues) {
  EXPECT_TRUE(seq.D(0).is_one());
  EXPECT_TRUE(seq.L(0).is_one());
  EXPECT_EQ(seq.D(1), Poly(F, {0, 1, 1}));
  EXPECT_EQ(seq.D(2), br(2) * br(1) * br(1));
  EXPECT_EQ(seq.L(2), br(2) * br(1));
}

TEST_F(CarlitzQ2, AValues) {
  const auto [num2, den2] = carlitz_A(seq, 2);
  EXPECT_EQ(num2, br(1));
  EXPECT_EQ(den2, seq.L(2) * br(1) * br(1));
  EXPECT_EQ(carlitz_A_value(seq, 2), Rational(Poly::constant(F, 1), seq.D(2)));
  const auto [num3, den3] = carlitz_A(seq, 3);
  EXPECT_EQ(num3, br(2));
  EXPECT_EQ(den3, seq.L(3) * pow(br(1), 4));
  EXPECT_THROW(carlitz_A(seq, 1), UsageError);
}

TEST_F(CarlitzQ2, ExpLogIdentityByHandForNTwo) {
  // [1] + [1]^2 + [2] = 0 over F_2.
  EXPECT_TRUE((br(1) + br(1) * br(1) + br(2)).is_zero());
  EXPECT_TRUE(exp_log_coefficient(seq, 2).is_zero());
}

TEST_F(CarlitzQ2, ExpLogIdentityThroughEight) {
  for (unsigned n = 1; n <= 8; ++n) {
    const auto c = exp_log_identity_check(seq, n);
    EXPECT_TRUE(c.holds) << n;
    EXPECT_FALSE(c.extension);
  }
}

TEST_F(CarlitzQ2, TelescopingStep) {
  for (unsigned k = 1; k <= 6; ++k) {
    EXPECT_TRUE(telescoping_lemma_corrected_check(seq, k)) << k;
    // The printed exponent 2^{k+1} on the right does not match the left side.
    EXPECT_FALSE(telescoping_lemma_check(seq, k)) << k;
  }
  // The numerator identity behind the corrected form.
  for (unsigned k = 1; k <= 6; ++k) EXPECT_EQ(pow(br(1), std::uint64_t{1} << k) + br(k + 1), br(k));
}

TEST(Carlitz, DegreeStructure) {
  for (unsigned q : {2u, 3u, 4u}) {
    CarlitzSeq seq(FieldSpec::of_order(q), 8);
    long L = 0;
    std::uint64_t qn = 1;
    for (unsigned n = 0; n <= (q == 2 ? 8u : 4u); ++n) {
      EXPECT_EQ(seq.D(n).degree(), static_cast<long>(n * qn)) << q << " " << n;
      EXPECT_EQ(seq.L(n).degree(), L) << q << " " << n;
      qn *= q;
      L += static_cast<long>(qn);
    }
  }
}

TEST(Carlitz, SignedIdentityInOddCharacteristic) {
  for (unsigned q : {3u, 5u, 9u}) {
    CarlitzSeq seq(FieldSpec::of_order(q), 6);
    for (unsigned n = 1; n <= 3; ++n) {
      const auto c = exp_log_identity_check(seq, n);
      EXPECT_TRUE(c.holds) << q << " " << n;
      EXPECT_TRUE(c.extension);
    }
  }
}

TEST(Carlitz, BudgetAndHypotheses) {
  CarlitzSeq seq(FieldSpec::of_order(2), 4);
  EXPECT_THROW(seq.D(5), BudgetExceeded);
  CarlitzSeq s3(FieldSpec::of_order(3));
  EXPECT_THROW(carlitz_A(s3, 2), UsageError);
  EXPECT_THROW(telescoping_lemma_check(s3, 1), UsageError);
}

TEST(Carlitz, ConcurrentReads) {
  CarlitzSeq seq(FieldSpec::of_order(2), 10);
  std::vector<std::thread> threads;
  std::vector<long> degs(4);
  for (int i = 0; i < 4; ++i) threads.emplace_back([&, i] { degs[i] = seq.D(10).degree() + seq.L(9 - i).degree(); });
  for (auto& t : threads) t.join();
  EXPECT_EQ(degs[0] - seq.L(9).degree(), 10 * 1024);
}

}  // namespace
}  // namespace primesym
