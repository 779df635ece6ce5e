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

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "primesym/field.hpp"

namespace primesym {

/// deg(0).
inline constexpr long kNegInfDegree = std::numeric_limits<long>::min();

/// A polynomial in A = F_q[t], coefficients lowest degree first with trailing
/// zeros trimmed.
class Poly {
 public:
  explicit Poly(FieldPtr field);
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, Elem c, std::size_t degree);
  /// The variable t.
  static Poly t(FieldPtr field);
  /// Inverse of `encode`.
  static Poly decode(FieldPtr field, std::uint64_t code);
  /// t^degree + (polynomial whose code is `tail`).
  static Poly monic_from_tail(FieldPtr field, std::size_t degree, std::uint64_t tail);

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// kNegInfDegree for the zero polynomial.
  long degree() const {
    return coeffs_.empty() ? kNegInfDegree : static_cast<long>(coeffs_.size()) - 1;
  }
  Elem lead() const { return coeffs_.empty() ? Elem{0} : coeffs_.back(); }
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Elem{0}; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  std::size_t nonzero_terms() const;

  /// Canonical encoding: base-q digit string of coefficient codes, low to high.
  /// Throws BudgetExceeded if it does not fit in 64 bits.
  std::uint64_t encode() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);

  Poly scaled(Elem c) const;
  Poly monic() const;
  Poly derivative() const;
  Elem evaluate(Elem x) const;
  /// Multiplication by t^n.
  Poly shifted(std::size_t n) const;
  /// f^{p^s} = sum c_i^{p^s} t^{i p^s}.
  Poly frobenius_power(unsigned s) const;

  std::string to_string(const std::string& var = "t") const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void trim();
  void check_field(const Poly& rhs) const;

  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

/// Schoolbook product on coefficient codes; the reference for the fast paths.
Poly multiply_schoolbook(const Poly& a, const Poly& b);
/// Bit-packed carry-less product; q = 2 only.
Poly multiply_gf2_packed(const Poly& a, const Poly& b);

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division; throws DivisionByZero for b = 0.
DivMod divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct ExtendedGcd {
  Poly g;
  Poly s;
  Poly t;
};
/// s a + t b = g with g monic.
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

Poly pow(const Poly& base, std::uint64_t e);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus);

/// Irreducibility over F_q by the Frobenius/gcd test: with d = deg f,
/// t^{q^d} = t mod f and gcd(f, t^{q^{d/r}} - t) = 1 for every prime r | d.
/// Throws UsageError for constants.
bool is_irreducible(const Poly& f);

/// [n] = t^{q^n} - t.
Poly bracket(const FieldPtr& field, unsigned n);

}  // namespace primesym
