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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace primesym {

/// Canonical code of an element of F_q: the residue digits d_i (coefficients
/// of the generator u) read as the base-p number sum d_i p^i.  q <= 256, so
/// every code fits in a byte.
using Elem = std::uint8_t;

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// The finite field F_{p^m} = F_p[u]/(modulus).
///
/// Arithmetic goes through precomputed q x q tables built once from schoolbook
/// residue arithmetic; the schoolbook routines stay available as the
/// reference implementation (`add_reference`, `mul_reference`).  Instances are
/// immutable and shared between threads through `FieldPtr`.
class FieldSpec {
 public:
  static constexpr unsigned kMaxOrder = 256;

  /// Builds F_{p^m}.  Without an explicit modulus the lexicographically
  /// smallest monic irreducible of degree m is used (equivalently: the one with
  /// the smallest canonical code).  `modulus_code` is sum c_i p^i including the
  /// leading coefficient.
  static FieldPtr make(unsigned p, unsigned m,
                       std::optional<std::uint64_t> modulus_code = std::nullopt);
  /// Builds F_q for a prime power q.
  static FieldPtr of_order(unsigned q,
                           std::optional<std::uint64_t> modulus_code = std::nullopt);
  /// Inverse of `name()`: parses "p^m/modulus-code".
  static FieldPtr parse(const std::string& name);

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned q() const { return q_; }
  bool char2() const { return p_ == 2; }
  std::uint64_t modulus_code() const { return modulus_code_; }
  /// Modulus coefficients over F_p, lowest degree first, length m + 1.
  const std::vector<unsigned>& modulus_digits() const { return modulus_; }
  /// "p^m/modulus-code", the field label used in every file format.
  std::string name() const;

  bool same_as(const FieldSpec& other) const {
    return p_ == other.p_ && m_ == other.m_ && modulus_code_ == other.modulus_code_;
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// The residue class of u.
  Elem generator() const;

  Elem add(Elem a, Elem b) const {
    return char2_ ? static_cast<Elem>(a ^ b) : add_[index(a, b)];
  }
  Elem sub(Elem a, Elem b) const {
    return char2_ ? static_cast<Elem>(a ^ b) : add_[index(a, neg_[b])];
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[index(a, b)]; }
  /// Throws DivisionByZero for a = 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// Square-and-multiply; any 64-bit exponent, 0^0 = 1.
  Elem pow(Elem a, std::uint64_t e) const;
  /// x -> x^p.
  Elem frobenius(Elem a) const { return frob_[a]; }
  /// x -> x^{p^s}.
  Elem frobenius(Elem a, unsigned s) const;
  bool in_prime_subfield(Elem a) const { return frob_[a] == a; }
  /// Image of an integer in the prime subfield.
  Elem from_int(long long n) const;

  /// Schoolbook residue arithmetic on digit vectors; the test oracle for the
  /// tables.
  Elem add_reference(Elem a, Elem b) const;
  Elem mul_reference(Elem a, Elem b) const;

  std::vector<unsigned> digits(Elem a) const;
  Elem from_digits(const std::vector<unsigned>& digits) const;

 private:
  FieldSpec(unsigned p, unsigned m, std::vector<unsigned> modulus);

  std::size_t index(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * q_ + b;
  }

  unsigned p_;
  unsigned m_;
  unsigned q_;
  bool char2_;
  std::uint64_t modulus_code_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> frob_;
};

/// True iff the monic digit vector (lowest first) is irreducible over F_p.
/// Trial division; only meant for field moduli (degree <= 8).
bool is_irreducible_over_prime_field(unsigned p, const std::vector<unsigned>& digits);

/// Lowest-code monic irreducible of degree m over F_p.
std::vector<unsigned> default_modulus(unsigned p, unsigned m);

bool is_prime(std::uint64_t n);

/// A value-typed field element for callers that want checked arithmetic.
/// Polynomials and series store raw `Elem` codes and carry the field once.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem code);

  const FieldPtr& field() const { return field_; }
  Elem code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator/(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement frobenius() const;
  bool in_prime_subfield() const;

  bool operator==(const FieldElement& rhs) const;

 private:
  void check_same(const FieldElement& rhs) const;

  FieldPtr field_;
  Elem code_;
};

/// All elements of the field in canonical (ascending code) order.
std::vector<FieldElement> enumerate(const FieldPtr& field);

}  // namespace primesym
