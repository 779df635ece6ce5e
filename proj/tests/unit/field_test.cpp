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
#include "primesym/field.hpp"

namespace primesym {
namespace {

const unsigned kOrders[] = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64};

TEST(FieldMake, PrimeFieldHasTwoElements) {
  auto F = FieldSpec::make(2, 1);
  EXPECT_EQ(F->q(), 2u);
  EXPECT_EQ(enumerate(F).size(), 2u);
}

TEST(FieldMake, F4DefaultModulusIsUSquaredPlusUPlusOne) {
  auto F = FieldSpec::make(2, 2);
  EXPECT_EQ(F->modulus_digits(), (std::vector<unsigned>{1, 1, 1}));
  EXPECT_EQ(F->name(), "2^2/7");
}

TEST(FieldMake, ReducibleModulusIsRejected) {
  // u^2 + 1 has code 1 + 0*2 + 1*4 = 5.
  EXPECT_THROW(FieldSpec::make(2, 2, 5), FieldError);
  try {
    FieldSpec::make(2, 2, 5);
  } catch (const FieldError& e) {
    EXPECT_NE(std::string(e.what()).find("reducible"), std::string::npos) << e.what();
  }
}

TEST(FieldMake, WrongDegreeModulusIsRejected) {
  EXPECT_THROW(FieldSpec::make(2, 2, 11), FieldError);  // u^3 + u + 1
  EXPECT_THROW(FieldSpec::make(4, 1), FieldError);      // 4 is not prime
  EXPECT_THROW(FieldSpec::of_order(6), FieldError);
  EXPECT_THROW(FieldSpec::of_order(512), FieldError);
}

TEST(FieldMake, DefaultModulusIsLowestIrreducible) {
  for (unsigned q : kOrders) {
    auto F = FieldSpec::of_order(q);
    for (std::uint64_t code = 0; code < F->modulus_code(); ++code) {
      std::vector<unsigned> d;
      std::uint64_t c = code;
      while (c > 0) {
        d.push_back(static_cast<unsigned>(c % F->p()));
        c /= F->p();
      }
      if (d.size() != F->m() + 1 || d.back() != 1) continue;
      EXPECT_FALSE(is_irreducible_over_prime_field(F->p(), d)) << "q=" << q << " code=" << code;
    }
  }
}

TEST(FieldParse, NameRoundTrips) {
  for (unsigned q : kOrders) {
    auto F = FieldSpec::of_order(q);
    auto G = FieldSpec::parse(F->name());
    EXPECT_TRUE(F->same_as(*G));
  }
  EXPECT_THROW(FieldSpec::parse("2^2"), FieldError);
  EXPECT_THROW(FieldSpec::parse("garbage"), FieldError);
}

TEST(FieldOps, F4GeneratorSquaredIsGeneratorPlusOne) {
  auto F = FieldSpec::make(2, 2);
  const Elem g = F->generator();
  EXPECT_EQ(F->mul(g, g), F->add(g, 1));
  EXPECT_EQ(F->inv(g), F->add(g, 1));
}

TEST(FieldOps, TablesMatchNaiveResidueArithmetic) {
  for (unsigned q : kOrders) {
    auto F = FieldSpec::of_order(q);
    oracle::NaiveField N(F->p(), F->modulus_digits());
    for (unsigned a = 0; a < q; ++a) {
      for (unsigned b = 0; b < q; ++b) {
        ASSERT_EQ(F->add(a, b), N.add(a, b)) << q << ": " << a << "+" << b;
        ASSERT_EQ(F->mul(a, b), N.mul(a, b)) << q << ": " << a << "*" << b;
        ASSERT_EQ(F->mul(a, b), F->mul_reference(a, b));
        ASSERT_EQ(F->add(a, b), F->add_reference(a, b));
      }
    }
  }
}

TEST(FieldOps, AxiomsHoldExhaustively) {
  for (unsigned q : kOrders) {
    if (q > 64) continue;
    auto F = FieldSpec::of_order(q);
    for (unsigned a = 0; a < q; ++a) {
      if (a != 0) ASSERT_EQ(F->mul(a, F->inv(a)), 1);
      ASSERT_EQ(F->add(a, F->neg(a)), 0);
      for (unsigned b = 0; b < q; ++b) {
        ASSERT_EQ(F->frobenius(F->add(a, b)), F->add(F->frobenius(a), F->frobenius(b)));
        ASSERT_EQ(F->frobenius(F->mul(a, b)), F->mul(F->frobenius(a), F->frobenius(b)));
        for (unsigned c = 0; c < q; c += 3) {
          ASSERT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
        }
      }
    }
  }
}

TEST(FieldOps, FrobeniusToTheMIsIdentity) {
  for (unsigned q : kOrders) {
    auto F = FieldSpec::of_order(q);
    for (unsigned a = 0; a < q; ++a) {
      Elem x = static_cast<Elem>(a);
      for (unsigned i = 0; i < F->m(); ++i) x = F->frobenius(x);
      EXPECT_EQ(x, a);
      EXPECT_EQ(F->frobenius(static_cast<Elem>(a), F->m()), a);
      EXPECT_EQ(F->frobenius(static_cast<Elem>(a)), F->pow(static_cast<Elem>(a), F->p()));
    }
  }
}

TEST(FieldOps, PowHandlesLargeExponents) {
  auto F = FieldSpec::of_order(16);
  for (unsigned a = 1; a < 16; ++a) {
    EXPECT_EQ(F->pow(a, 15), 1);
    EXPECT_EQ(F->pow(a, 15ULL * 1234567891ULL + 4), F->pow(a, 4));
    Elem slow = 1;
    for (unsigned i = 0; i < 131071 % 15; ++i) slow = F->mul(slow, a);
    EXPECT_EQ(F->pow(a, 131071), slow);
  }
  EXPECT_EQ(F->pow(0, 0), 1);
  EXPECT_EQ(F->pow(0, 5), 0);
}

TEST(FieldOps, InverseOfZeroThrows) {
  auto F = FieldSpec::of_order(9);
  EXPECT_THROW(F->inv(0), DivisionByZero);
}

TEST(PrimeSubfield, CountsMatchCharacteristic) {
  auto F4 = FieldSpec::of_order(4);
  EXPECT_TRUE(F4->in_prime_subfield(0));
  EXPECT_TRUE(F4->in_prime_subfield(1));
  EXPECT_FALSE(F4->in_prime_subfield(F4->generator()));
  for (unsigned q : kOrders) {
    auto F = FieldSpec::of_order(q);
    unsigned fixed = 0;
    for (const auto& x : enumerate(F)) fixed += x.in_prime_subfield();
    EXPECT_EQ(fixed, F->p()) << "q=" << q;
  }
}

TEST(FieldElementTest, CheckedArithmetic) {
  auto F = FieldSpec::of_order(8);
  auto G = FieldSpec::of_order(8, 13);  // u^3 + u^2 + 1
  FieldElement a(F, 3), b(F, 5), c(G, 3);
  EXPECT_EQ((a * b).code(), F->mul(3, 5));
  EXPECT_EQ((a / b * b).code(), 3);
  EXPECT_THROW(a + c, FieldMismatch);
  EXPECT_THROW(FieldElement(F, 0).inverse(), DivisionByZero);
  EXPECT_THROW(FieldElement(F, 8), FieldError);
}

TEST(FieldElementTest, EnumerationOrderIsStable) {
  auto F = FieldSpec::of_order(27);
  auto a = enumerate(F);
  auto b = enumerate(FieldSpec::of_order(27));
  ASSERT_EQ(a.size(), 27u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].code(), i);
    EXPECT_EQ(b[i].code(), i);
  }
}

TEST(FieldOps, DigitsRoundTrip) {
  for (unsigned q : kOrders) {
    auto F = FieldSpec::of_order(q);
    for (unsigned a = 0; a < q; ++a) EXPECT_EQ(F->from_digits(F->digits(a)), a);
  }
}

TEST(FieldOps, FromIntReducesModP) {
  auto F = FieldSpec::of_order(25);
  EXPECT_EQ(F->from_int(7), F->from_int(2));
  EXPECT_EQ(F->add(F->from_int(-1), 1), 0);
}

}  // namespace
}  // namespace primesym
