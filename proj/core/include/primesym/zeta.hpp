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
#include <vector>

#include "primesym/laurent.hpp"
#include "primesym/primesum.hpp"

namespace primesym {

/// Omega(a), the number of monic prime factors of a counted with
/// multiplicity, for every monic a of degree <= D.  Monic polynomials are
/// indexed by degree, then by the base-q code of their lower coefficients;
/// index 0 is the polynomial 1.
class OmegaTable {
 public:
  OmegaTable(FieldPtr field, unsigned max_degree);

  const FieldPtr& field() const { return field_; }
  unsigned max_degree() const { return max_degree_; }
  std::size_t size() const { return omega_.size(); }

  std::size_t index_of(const Poly& monic) const;
  Poly poly_at(std::size_t index) const;
  unsigned degree_at(std::size_t index) const;
  unsigned omega_at(std::size_t index) const { return omega_[index]; }
  unsigned omega(const Poly& monic) const { return omega_[index_of(monic)]; }
  bool is_prime_at(std::size_t index) const { return omega_[index] == 1; }

 private:
  FieldPtr field_;
  unsigned max_degree_;
  std::vector<std::size_t> offset_;
  std::vector<std::uint8_t> omega_;
};

/// Builds the table by a smallest-prime-factor sieve.
OmegaTable omega_sieve(const FieldPtr& field, unsigned max_degree);

/// zeta(x, k) = sum over monic a of x^{Omega(a)} / a^k restricted to
/// deg a <= D; slices[w] is the coefficient of x^w.
struct ZetaTrunc {
  FieldPtr field;
  std::uint64_t k = 1;
  unsigned max_degree = 0;
  long horizon = 0;
  std::vector<LaurentSeries> slices;
};

/// Horizon defaults to the determinable k(D+1) - 1 and may not exceed it.
ZetaTrunc zeta_truncated(const OmegaTable& table, std::uint64_t k, std::optional<long> horizon = std::nullopt);

/// Slices of prod over primes of degree <= D of (1 - x/P^k)^{-1}, truncated at
/// x-degree D and t-horizon N.
std::vector<LaurentSeries> euler_product_slices(const OmegaTable& table, std::uint64_t k, long horizon);

struct EulerProductCheck {
  bool agree = true;
  long omega = -1;  ///< first disagreeing slice
  long index = -1;  ///< first disagreeing coefficient in that slice
};
EulerProductCheck euler_product_check(const ZetaTrunc& zeta, const OmegaTable& table);

/// zeta'(1, k) / zeta(1, k) from the truncation: derivative in x, evaluation at
/// x = 1, then series division by the unit zeta(1, k).
LaurentSeries log_derivative_at_one(const ZetaTrunc& zeta);

struct LogDerivativeCheck {
  long horizon = 0;
  /// Valuation of zeta'/zeta + P_{<=D}(k): expected zero to horizon.
  ValuationReport agreement;
  /// Set when the sum with the other sign vanishes instead.
  bool sign_discrepancy = false;
};

/// Compares against an engine run; refuses mismatched horizons.
LogDerivativeCheck log_derivative_check(const ZetaTrunc& zeta, const PartialSumResult& engine);
LogDerivativeCheck log_derivative_check(const FieldPtr& field, std::uint64_t k, unsigned max_degree,
                                        const RunOptions& options = {});

}  // namespace primesym
