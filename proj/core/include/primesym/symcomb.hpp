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

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "primesym/carlitz.hpp"
#include "primesym/rational.hpp"

namespace primesym {

/// Number of variables E_k = e_{2^k - 1}, k = 1..kMaxE.
inline constexpr unsigned kMaxE = 8;
/// Hard budget on the weight m of restricted power sums.
inline constexpr unsigned kMaxWeight = 2 * ((1u << 6) - 1);

/// Exponent vector: entry k-1 is the exponent of E_k.
using EMonomial = std::array<std::uint32_t, kMaxE>;

/// Polynomial in E_1..E_8 with coefficients in Z/2 or Z/4.  Zero
/// coefficients are never stored.
class SymPoly {
 public:
  explicit SymPoly(unsigned modulus = 2);

  static SymPoly one(unsigned modulus);
  /// The single variable E_k = e_{2^k - 1}.
  static SymPoly var(unsigned k, unsigned modulus);
  static SymPoly monomial(const EMonomial& exps, unsigned coeff, unsigned modulus);
  /// Parses e-notation such as "e_{31}+e_{15}^2 e_1+e_7^4(e_3+e_1^3)".
  static SymPoly parse(const std::string& text, unsigned modulus);

  unsigned modulus() const { return modulus_; }
  const std::map<EMonomial, unsigned>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned coefficient(const EMonomial& e) const;

  /// Reduces the coefficients modulo 2.
  SymPoly mod2() const;
  /// Coefficients read as 0..3 in Z/4 (a mod-2 polynomial lifts to 0/1).
  SymPoly lift_to4() const;

  SymPoly& operator+=(const SymPoly& rhs);
  SymPoly& operator-=(const SymPoly& rhs);
  SymPoly operator*(const SymPoly& rhs) const;
  SymPoly scaled(unsigned c) const;
  SymPoly pow(std::uint64_t e) const;

  /// e-notation with the largest-index variables first, e.g.
  /// "e_15 + e_7^2e_1 + e_3^5 + e_3^4e_1^3".
  std::string to_string() const;

  friend bool operator==(const SymPoly& a, const SymPoly& b) {
    return a.modulus_ == b.modulus_ && a.terms_ == b.terms_;
  }
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }

 private:
  void add_term(const EMonomial& e, unsigned c);

  unsigned modulus_;
  std::map<EMonomial, unsigned> terms_;
};

/// Weight sum_k (2^k - 1) R_k of a monomial.
std::uint64_t weight(const EMonomial& e);

/// Multiplicities R_1..R_K with sum (2^k - 1) R_k = m.
struct PartitionR {
  std::vector<std::uint32_t> R;
  std::uint64_t weight() const;
  std::uint64_t total() const;
};

/// Every solution with k <= k_max (0 = as large as 2^k - 1 <= m allows), in
/// decreasing lexicographic order of (R_1, R_2, ...).
std::vector<PartitionR> restricted_partitions(unsigned m, unsigned k_max = 0);
void for_each_restricted_partition(unsigned m, unsigned k_max, const std::function<void(const PartitionR&)>& fn);

/// Newton-Girard coefficient of prod E_k^{R_k} in p_m:
/// (-1)^m m (sum R - 1)! / prod R_k! * prod (-1)^{R_k}, reduced mod 2 or 4.
unsigned ng_coefficient(const PartitionR& R, unsigned m, unsigned modulus);

/// True iff the multinomial (sum R)! / prod R_k! is odd, i.e. no two R_k share
/// a binary digit.
bool lucas_odd(const PartitionR& R);

/// 2-adic valuation and odd part mod 4 of n!.
struct FactorialMod4 {
  std::uint64_t v2 = 0;
  unsigned odd = 1;
};
FactorialMod4 factorial_mod4(std::uint64_t n);

/// p_m with every e_i, i not of the form 2^k - 1, set to zero.
SymPoly restricted_power_sum(unsigned m, unsigned modulus);

/// (p_{2^n-1}^2 - p_{2(2^n-1)}) / 2 reduced mod 2.  Throws ConsistencyError if
/// a coefficient of the numerator is odd.
SymPoly Y_n(unsigned n);

enum class XForm {
  kRecursive,       ///< sum_k E_{n-k}^{2^k} f_k, f_0 = 1, f_{k+1} = f_k e_1^{2^k} + X_{k+1}
  kNestedCombined,  ///< brackets sum_{j=0}^{k} e_1^{2^k - 2^j} X_j with X_0 = 1
  kNestedLiteral,   ///< brackets X_k + sum_{j=1}^{k-1} e_1^{2^k - 2^j} X_j with X_0 = 1
};

SymPoly X_n(unsigned n, XForm form = XForm::kRecursive);
/// The auxiliary f_k of the recursive form.
SymPoly f_k(unsigned k);

/// Monomials of p_{2^n-1} mod 2 whose e_1 exponent is at most 2^{n-1} - 1.
SymPoly second_half(unsigned n);

/// Substitutes 1/D_i for E_i = e_{2^i - 1}.  Needs q = 2 and a mod-2 input.
Rational specialize_to_carlitz(const SymPoly& s, const CarlitzSeq& seq);

}  // namespace primesym
