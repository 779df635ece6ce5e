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

#include "primesym/primesum.hpp"
#include "primesym/ratrec.hpp"

namespace primesym {

/// Version stamp embedded in every report.
std::string version();

enum class Task { kPrimes, kSum, kVerify, kScan, kReconstruct, kSpeyer, kCarlitz, kZetaCheck, kPowersum };

std::string to_string(Task task);
Task parse_task(const std::string& s);

/// "3,7,15", "1..20" or "3..63/6" (start..end/step), combined with commas.
std::vector<std::uint64_t> parse_k_list(const std::string& text);

/// A complete, replayable description of one run.
struct Manifest {
  std::string field = "2^1/2";  ///< canonical "p^m/modulus-code"
  Task task = Task::kSum;
  std::string conjecture;        ///< verify: A, B, C or D
  SumKind kind = SumKind::kPK;
  std::vector<std::uint64_t> ks{1};
  unsigned d_min = 1;
  unsigned d_max = 1;
  std::optional<long> horizon;
  unsigned workers = 1;
  std::optional<std::string> cache_dir;
  std::optional<std::string> out;
  std::string format = "json";   ///< json or csv
  std::string action;            ///< speyer: xn, yn, check, specialize
  unsigned n_max = 6;
  std::optional<std::string> input;  ///< reconstruct: a series JSON file
  std::optional<long> max_deg;

  FieldPtr field_ptr() const;
  /// Throws UsageError for inconsistent parameters.
  void validate() const;

  nlohmann::json to_json() const;
  static Manifest from_json(const nlohmann::json& j);
  static Manifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Conventional process exit codes.
enum ExitCode : int { kExitOk = 0, kExitRefuted = 1, kExitUsage = 2, kExitBudget = 3 };

enum class VerifyStatus { kConsistent, kRefuted, kExactPass, kExactFail, kInconclusive };

std::string to_string(VerifyStatus s);

/// One claim checked against one computed instance.
struct VerifyOutcome {
  std::string conjecture;   ///< "A", "B", "C(iv)", "D(iii)", ...
  std::string statement;    ///< the instance, e.g. "P(7) = [2]^2/[1]^8 over F_2"
  VerifyStatus status = VerifyStatus::kInconclusive;
  long horizon = 0;         ///< coefficients j <= horizon are final
  ValuationReport bound;    ///< valuation of the quantity that should vanish
  std::optional<long> witness_index;
  std::optional<Elem> witness_value;
  nlohmann::json detail = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Aggregate status, worst first: refuted, exact-fail, inconclusive only when
/// nothing was decided, then consistent, then exact-pass.
VerifyStatus combine(const std::vector<VerifyOutcome>& outcomes);
int exit_code_for(VerifyStatus s);

/// Claim "series == 0 through its horizon"; a nonzero coefficient refutes.
VerifyOutcome expect_vanishing(std::string conjecture, std::string statement, const LaurentSeries& series);
/// Claim "series != 0"; a final nonzero coefficient proves it.
VerifyOutcome expect_nonvanishing(std::string conjecture, std::string statement, const LaurentSeries& series);

/// Verification drivers.  Each checks the conjecture's hypotheses first and
/// throws UsageError naming the violated hypothesis.
std::vector<VerifyOutcome> verify_A(const Manifest& m, const RunOptions& options);
std::vector<VerifyOutcome> verify_B(const Manifest& m, const RunOptions& options, const Catalog& catalog);
std::vector<VerifyOutcome> verify_C(const Manifest& m, const RunOptions& options, const Catalog& catalog);
std::vector<VerifyOutcome> verify_D(const Manifest& m, const RunOptions& options, const Catalog& catalog);

/// A finite-level guess for one cell of a scan.
struct Guess {
  std::string quantity;  ///< "p_d", "p_le_d" or "e_le_d"
  long value = 0;
  bool zero = false;  ///< the quantity itself is guessed to vanish
  std::string source;
};

/// Guesses applicable to (q, k, d), for the given summand kind.
std::vector<Guess> finite_level_guesses(unsigned q, SumKind kind, std::uint64_t k, unsigned d);

struct ScanRow {
  unsigned q = 0;
  std::string field;
  SumKind kind = SumKind::kPK;
  std::uint64_t k = 0;
  unsigned d = 0;
  long horizon = 0;
  ValuationReport p_d;
  ValuationReport p_le_d;
  std::optional<ValuationReport> e_le_d;
  DegreeFlags flags;
  double runtime_ms = 0;
  struct Cell {
    Guess guess;
    std::optional<bool> match;  ///< empty when the horizon cannot decide
  };
  std::vector<Cell> cells;

  nlohmann::json to_json() const;
};

/// Rows for every k in the manifest and every d in [d_min, d_max].  The
/// compute horizon covers every guessed value, so each guess is decided.
std::vector<ScanRow> scan(const Manifest& m, const RunOptions& options, const Catalog& catalog);

/// The frozen CSV layout shared by `sum` and `scan`.
std::string csv_header();
std::string csv_row(unsigned q, SumKind kind, std::uint64_t k, const DegreeResult& r);
std::string csv_row(const ScanRow& row);

/// Valuation theorems for one degree: q(q-1) | p_d(k), p_d(k) >= kd, the
/// equality characterization and, for q = 2 and odd k, the t^-(dk+1) criterion.
struct ValuationTheoremCheck {
  unsigned q = 0;
  std::uint64_t k = 0;
  unsigned d = 0;
  long horizon = 0;
  ValuationReport p_d;
  bool divisible = false;
  bool lower_bound = false;
  bool equality_predicted = false;
  bool equality_matches = false;
  std::optional<bool> squarefree_criterion;  ///< q = 2, k odd only
  bool holds() const;
  nlohmann::json to_json() const;
};

bool is_squarefree(std::uint64_t n);
/// p_d(k) = kd exactly when q is prime and d a square-free multiple of q, or
/// q = 2 and d is 4 times an odd square-free number.
bool equality_expected(unsigned q, unsigned d);

/// Recomputes P_d(k) with a growing horizon (starting at kd + 2q(q-1),
/// doubling the margin) until the valuation is exact or `max_horizon` is
/// reached.
DegreeResult degree_sum_adaptive(const FieldPtr& field, SumKind kind, std::uint64_t k, unsigned d,
                                 long max_horizon, const RunOptions& options = {});

ValuationTheoremCheck check_valuation_theorems(const FieldPtr& field, std::uint64_t k, unsigned d,
                                               const RunOptions& options = {});

/// P(d, k) values for one field and degree range, with the {c, c[1]} shape
/// test used for non-prime q.
struct PowerSumObservation {
  unsigned d = 0;
  std::uint64_t k = 0;
  Poly value{FieldPtr{}};
  bool in_c_or_c_bracket1 = false;  ///< value = c or c [1] for a constant c
  bool const_times_linear_zero = false;
  nlohmann::json to_json() const;
};
std::vector<PowerSumObservation> powersum_observations(const FieldPtr& field, std::uint64_t k, unsigned d_min,
                                                       unsigned d_max);

/// The outcome of `run`: the report document, optional CSV text and the exit
/// code the CLI should return.
struct Report {
  nlohmann::json document;
  std::optional<std::string> csv;
  int exit_code = kExitOk;

  /// Report text in the manifest's format.
  std::string render(const std::string& format) const;
};

/// Executes the manifest's task.  Progress lines go to options.progress.
Report run(const Manifest& m, const RunOptions& options = {});

/// Copy of a report document with timing and cache-provenance fields
/// removed; two runs of the same manifest agree on this projection.
nlohmann::json strip_volatile(const nlohmann::json& document);

}  // namespace primesym
