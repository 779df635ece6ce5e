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
#include <string>
#include <vector>

#include "primesym/kernels.hpp"
#include "primesym/laurent.hpp"

namespace primesym {

/// The summand attached to each monic prime.
enum class SumKind {
  kConjA,  ///< 1/(1 + P)
  kPK,     ///< 1/(1 - P^k)
  kGP,     ///< G_p(P^{-k}) with G_p(u) = ((1-u^p) - (1-u)^p) / (p (1-u)^p)
  kPower,  ///< P^k, polynomial valued
};

std::string to_string(SumKind kind);
SumKind parse_sum_kind(const std::string& s);

enum class TermStrategy {
  kAuto,               ///< cheapest of the two fast paths by cost estimate
  kFrobeniusHorner,    ///< geometric expansion in P^{-k}, powers by Frobenius-Horner
  kSparseDenominator,  ///< P^c / (P^c - P^{p^s}) when k + c = p^s
  kReference,          ///< exact numerator and denominator, generic division
};

std::string to_string(TermStrategy s);

/// Coefficients N_1..N_p (mod p, as integers in [0,p)) of
/// ((1-u^p) - (1-u)^p)/p.  Since (1-u)^p = 1-u^p in characteristic p,
/// G_p(u) = sum_{m>=1} N_{((m-1) mod p)+1} u^m.
std::vector<unsigned> gp_numerator(unsigned p);

/// Single summand for a monic prime of degree d >= 1, expanded through
/// t^{-horizon}.  Its valuation is exactly k d (d for kConjA).
LaurentSeries reciprocal_prime_term(const Poly& prime, std::uint64_t k, SumKind kind, long horizon,
                                    TermStrategy strategy = TermStrategy::kAuto);

/// Evaluates the summand for every prime of one degree.  The strategy is
/// chosen once per (kind, k, degree, horizon) and reused for each prime.
class TermEvaluator {
 public:
  TermEvaluator(FieldPtr field, SumKind kind, std::uint64_t k, unsigned degree, long horizon,
                TermStrategy strategy = TermStrategy::kAuto);

  TermStrategy strategy() const { return strategy_; }
  double estimated_cost() const { return cost_; }

  /// The term for a prime given by its coefficients (lowest first, monic).
  kernels::Dense term(const std::vector<Elem>& prime) const;
  /// acc[j] += term_j for 0 <= j <= horizon (acc has horizon + 1 entries).
  void accumulate(const std::vector<Elem>& prime, std::vector<Elem>& acc) const;

 private:
  kernels::Dense term_reference(const std::vector<Elem>& prime) const;
  kernels::Dense term_horner(const std::vector<Elem>& prime) const;
  kernels::Dense term_sparse(const std::vector<Elem>& prime) const;

  FieldPtr field_;
  SumKind kind_;
  std::uint64_t k_;
  unsigned degree_;
  long horizon_;
  TermStrategy strategy_;
  double cost_ = 0;
  unsigned s_ = 0;         // sparse path: k + c_ = p^s_
  std::uint64_t c_ = 0;
  std::vector<unsigned> gp_;
};

}  // namespace primesym
