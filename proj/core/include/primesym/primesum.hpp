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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "primesym/laurent.hpp"
#include "primesym/primes.hpp"
#include "primesym/rational.hpp"
#include "primesym/terms.hpp"

namespace primesym {

/// What to sum: the field, the summand kind, k, the degree range and the
/// horizon.  Without an explicit horizon the "auto" horizon k(d_max+1) - 1 is
/// used, beyond which primes of degree > d_max could still contribute.
struct SumSpec {
  FieldPtr field;
  SumKind kind = SumKind::kPK;
  std::uint64_t k = 1;
  unsigned d_min = 1;
  unsigned d_max = 1;
  std::optional<long> horizon;
  EnumMode enum_mode = EnumMode::kAuto;
  TermStrategy strategy = TermStrategy::kAuto;

  /// k actually used (1 for CONJ_A).
  std::uint64_t effective_k() const;
  long auto_horizon() const;
  /// The horizon every per-degree series is computed to.
  long compute_horizon() const;
  /// Largest index that is final for the infinite sum: min(compute, auto).
  long final_horizon() const;
  /// True iff (q - 1) | k, the hypothesis of the valuation theorems.
  bool qm1_divides_k() const;
  void validate() const;
  nlohmann::json to_json() const;
};

/// Flags derived from the stored coefficients of one per-degree series.
/// Empty optionals mean "not determinable within the horizon" or "not
/// applicable because (q - 1) does not divide k".
struct DegreeFlags {
  bool qm1_applicable = false;
  std::optional<bool> div_q_qm1;
  std::optional<bool> ge_kd;
  std::optional<bool> eq_kd;
  std::optional<bool> has_dk_plus_1;

  nlohmann::json to_json() const;
};

DegreeFlags compute_flags(const SumSpec& spec, unsigned d, const LaurentSeries& series);

struct DegreeResult {
  unsigned d = 0;
  LaurentSeries series;
  std::uint64_t primes = 0;
  double runtime_ms = 0;
  bool from_cache = false;
  bool noop = false;  ///< k d > horizon: the degree contributes nothing
  std::string strategy;
  ValuationReport valuation;
  DegreeFlags flags;
  /// CONJ_A over F_2 only: one_counts[j] = #{primes of this degree whose
  /// t^{-j} coefficient is 1}.
  std::vector<std::uint64_t> one_counts;
};

struct PartialSumResult {
  SumSpec spec;
  long horizon = 0;
  std::vector<DegreeResult> degrees;
  /// cumulative[i] = sum of degrees[0..i].
  std::vector<LaurentSeries> cumulative;
  std::vector<ValuationReport> cumulative_valuations;

  const DegreeResult& degree(unsigned d) const;
  const LaurentSeries& cumulative_through(unsigned d) const;
  const LaurentSeries& total() const { return cumulative.back(); }
};

struct RunOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
  /// Heartbeat lines (degrees done, primes processed); never on stdout.
  std::function<void(const std::string&)> progress;
  /// Hard cap on q^d candidates per degree.
  std::uint64_t max_candidates = std::uint64_t{1} << 34;
};

struct NormalizedK {
  std::uint64_t k0 = 1;
  unsigned e = 0;
};

/// k = k0 p^e with p not dividing k0.
NormalizedK normalize_k(unsigned p, std::uint64_t k);

/// Sum over the monic primes of degree d of the spec's summand, through the
/// compute horizon.  The result is independent of the worker count.
DegreeResult sum_over_degree(const SumSpec& spec, unsigned d, const RunOptions& options = {});

/// Per-degree and cumulative sums for d_min..d_max, reading and writing the
/// per-degree cache when one is configured.
PartialSumResult accumulate(const SumSpec& spec, const RunOptions& options = {});

/// `accumulate` for the G_p variant.
PartialSumResult g_term_sum(SumSpec spec, const RunOptions& options = {});

enum class Scope { kFull, kDegree, kCumulative };

/// kFull bounds the valuation of the infinite sum and is only exact when a
/// nonzero coefficient appears at or below the final horizon.
ValuationReport valuation_of(const PartialSumResult& result, Scope scope, unsigned d = 0);

/// Remark-style parity check for CONJ_A over F_2: for every index j with
/// d_min <= j <= min(d_max, horizon), the cumulative t^{-j} coefficient equals
/// the parity of #{primes of degree <= j whose t^{-j} coefficient is 1}.
struct ParityCheck {
  long index = 0;
  std::uint64_t count = 0;
  Elem coefficient = 0;
  bool consistent = true;
};
std::vector<ParityCheck> conj_a_parity_counts(const PartialSumResult& result);

/// P(d, k) = sum of P^k over the monic primes of degree d, exactly.
Poly power_sum_primes(const FieldPtr& field, unsigned d, std::uint64_t k);

/// Exact sum over the degree-d primes as a reduced rational function.
/// Throws BudgetExceeded once the running denominator exceeds the budget.
Rational exact_degree_sum(const FieldPtr& field, SumKind kind, std::uint64_t k, unsigned d,
                          long max_den_degree = 20000);

/// Exactness by degree counting: the sum over the primes of degrees in
/// [d_lo, d_hi] is N/D with deg N < deg D <= B, where B is the total degree of
/// the term denominators, so a series that vanishes through index B is
/// exactly zero.  Otherwise the series gives the exact valuation.
struct ExactnessCertificate {
  bool zero = false;
  long bound = 0;
  ValuationReport valuation;
};
ExactnessCertificate certify_exact(const FieldPtr& field, SumKind kind, std::uint64_t k, unsigned d_lo,
                                   unsigned d_hi, const RunOptions& options = {});

/// p_1(k) and whether p_1(k) >= 2k, for q = 2^m and (q - 1) | k.
struct C4Predicate {
  ValuationReport p1;
  bool predicate = false;
};
C4Predicate vanishing_predicate_C4(const FieldPtr& field, std::uint64_t k);

/// Per-degree cache entries: one JSON document per (field, kind, k, d).
class DegreeCache {
 public:
  explicit DegreeCache(std::filesystem::path dir);

  std::filesystem::path path_for(const SumSpec& spec, unsigned d) const;
  /// Entry truncated to `horizon`, or nullopt when missing or too short.
  /// A stored entry over a different field raises CacheMismatch.
  std::optional<DegreeResult> load(const SumSpec& spec, unsigned d, long horizon) const;
  void store(const SumSpec& spec, const DegreeResult& result) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace primesym
