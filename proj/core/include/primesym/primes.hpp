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
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "primesym/poly.hpp"

namespace primesym {

/// Number of monic irreducibles of degree d over F_q, by Moebius inversion of
/// q^n = sum_{d | n} d N_d.
std::uint64_t count_irreducibles(std::uint64_t q, unsigned d);

/// q^d, or BudgetExceeded when it does not fit in 63 bits.
std::uint64_t tail_space(std::uint64_t q, unsigned d);

enum class EnumMode {
  kAuto,   ///< sieve while the bitmap fits the memory budget, else test
  kSieve,  ///< composite bitmap over all monic degree-d encodings
  kTest,   ///< per-candidate Frobenius/gcd irreducibility test
};

/// Largest q^d for which kAuto picks the sieve (one bit per candidate).
inline constexpr std::uint64_t kSieveBudgetBits = std::uint64_t{1} << 30;

/// Composite bitmap for the monic polynomials of degree d, indexed by the
/// encoding of their lower d coefficients ("tail").  Every product f g with f
/// monic irreducible of degree <= d/2 is marked; unmarked tails are exactly
/// the primes.  Immutable once built and shared across workers.
class DegreeSieve {
 public:
  DegreeSieve(FieldPtr field, unsigned degree);

  bool is_prime_tail(std::uint64_t tail) const {
    return !((composite_[tail >> 6] >> (tail & 63)) & 1);
  }
  std::uint64_t size() const { return size_; }

 private:
  void mark(std::uint64_t tail) { composite_[tail >> 6] |= std::uint64_t{1} << (tail & 63); }
  void mark_multiples_gf2(const Poly& f);
  void mark_multiples(const Poly& f);

  FieldPtr field_;
  unsigned degree_;
  std::uint64_t size_;
  std::vector<std::uint64_t> composite_;
};

/// Deterministic stream of the monic irreducibles of one degree in ascending
/// canonical encoding.  A stream covers a half-open range of tails and can be
/// split into sub-streams for parallel or resumable enumeration; sub-streams
/// share the (read-only) sieve.
class PrimeStream {
 public:
  PrimeStream(FieldPtr field, unsigned degree, EnumMode mode = EnumMode::kAuto);

  const FieldPtr& field() const { return field_; }
  unsigned degree() const { return degree_; }
  EnumMode mode() const { return mode_; }
  std::uint64_t begin_tail() const { return lo_; }
  std::uint64_t end_tail() const { return hi_; }
  std::uint64_t cursor() const { return cursor_; }

  /// A stream over [lo, hi) intersected with this stream's range.
  PrimeStream subrange(std::uint64_t lo, std::uint64_t hi) const;
  /// Splits the range into `parts` contiguous pieces of near-equal size.
  std::vector<PrimeStream> split(std::size_t parts) const;

  std::optional<Poly> next();

  /// Calls fn(coeffs) with the coefficient vector (lowest first, monic, size
  /// d + 1) of every remaining prime; returns the number visited.
  template <class Fn>
  std::uint64_t for_each(Fn&& fn) {
    std::vector<Elem> coeffs(degree_ + 1, 0);
    std::uint64_t count = 0;
    for (; cursor_ < hi_; ++cursor_) {
      if (!is_prime_tail(cursor_)) continue;
      decode_tail(cursor_, coeffs);
      fn(static_cast<const std::vector<Elem>&>(coeffs));
      ++count;
    }
    return count;
  }

 private:
  bool is_prime_tail(std::uint64_t tail) const;
  void decode_tail(std::uint64_t tail, std::vector<Elem>& coeffs) const;

  FieldPtr field_;
  unsigned degree_;
  EnumMode mode_;
  std::shared_ptr<const DegreeSieve> sieve_;
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::uint64_t cursor_ = 0;
};

PrimeStream iter_irreducibles(const FieldPtr& field, unsigned degree,
                              EnumMode mode = EnumMode::kAuto);

/// All monic primes of the given degree, ascending encoding.
std::vector<Poly> primes_of_degree(const FieldPtr& field, unsigned degree,
                                   EnumMode mode = EnumMode::kAuto);

/// Product of all monic primes whose degree divides n; equals [n].
Poly product_primes_dividing(const FieldPtr& field, unsigned n);

}  // namespace primesym
