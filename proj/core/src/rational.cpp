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

#include "primesym/rational.hpp"

#include "primesym/error.hpp"

namespace primesym {

Rational::Rational(FieldPtr field) : num_(field), den_(Poly::constant(field, 1)) {}

Rational::Rational(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

Rational::Rational(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), 1);
    return;
  }
  const Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  const Elem lead = den_.lead();
  if (lead != 1) {
    const Elem inv = num_.field()->inv(lead);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

long Rational::valuation() const {
  if (is_zero()) throw HorizonError("valuation of zero is infinite");
  return den_.degree() - num_.degree();
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const Poly g = gcd(den_, rhs.den_);
  const Poly a = den_ / g;
  const Poly b = rhs.den_ / g;
  num_ = num_ * b + rhs.num_ * a;
  den_ = a * rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (is_zero() || rhs.is_zero()) {
    num_ = Poly(field());
    den_ = Poly::constant(field(), 1);
    return *this;
  }
  // Cross-cancel first to keep the intermediate products small.
  const Poly g1 = gcd(num_, rhs.den_);
  const Poly g2 = gcd(rhs.num_, den_);
  num_ = (num_ / g1) * (rhs.num_ / g2);
  den_ = (den_ / g2) * (rhs.den_ / g1);
  normalize();
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
  return Rational(den_, num_);
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

std::string Rational::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Rational operator+(Rational a, const Rational& b) { return a += b; }
Rational operator-(Rational a, const Rational& b) { return a -= b; }
Rational operator*(Rational a, const Rational& b) { return a *= b; }
Rational operator/(Rational a, const Rational& b) { return a /= b; }

Rational pow(const Rational& base, std::uint64_t e) {
  // Already in lowest terms, so powers of num and den stay coprime.
  return Rational(pow(base.num(), e), pow(base.den(), e));
}

Rational frobenius_power(const Rational& f, unsigned s) {
  return Rational(f.num().frobenius_power(s), f.den().frobenius_power(s));
}

}  // namespace primesym
