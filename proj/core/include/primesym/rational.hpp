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

#pragma once

#include <string>

#include "primesym/poly.hpp"

namespace primesym {

/// An element of K = F_q(t) in lowest terms with a monic denominator.
class Rational {
 public:
  explicit Rational(FieldPtr field);
  explicit Rational(Poly num);
  /// Throws DivisionByZero if den = 0.
  Rational(Poly num, Poly den);

  const FieldPtr& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// deg den - deg num, i.e. the valuation at infinity; throws for zero.
  long valuation() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);
  Rational inverse() const;

  std::string to_string() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

Rational operator+(Rational a, const Rational& b);
Rational operator-(Rational a, const Rational& b);
Rational operator*(Rational a, const Rational& b);
Rational operator/(Rational a, const Rational& b);
Rational pow(const Rational& base, std::uint64_t e);
/// f^{p^s}, computed coefficient-wise.
Rational frobenius_power(const Rational& f, unsigned s);

}  // namespace primesym
