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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "primesym/laurent.hpp"
#include "primesym/primesum.hpp"
#include "primesym/rational.hpp"

namespace primesym {

/// num/den with gcd 1 and monic den whose expansion matches a series.
struct RationalCandidate {
  Poly num;
  Poly den;
  long max_deg = 0;
  long matched_through = -1;

  Rational value() const { return Rational(num, den); }
  nlohmann::json to_json() const;
};

/// Default degree bound for a series known through `horizon`.
long default_max_deg(long horizon);

/// The unique num/den with deg num, deg den <= max_deg whose expansion agrees
/// with the series through its horizon, found by the extended Euclidean
/// algorithm on (x^{N+1}, series) in x = 1/t.  Needs horizon >= 2 max_deg + 1
/// and throws HorizonError otherwise.
std::optional<RationalCandidate> reconstruct(const LaurentSeries& series, long max_deg);

/// Integer environment for formula and family parameters.
using FormulaEnv = std::map<std::string, long long>;

/// Evaluates a closed form over brackets [n] = t^{q^n} - t, t, integers, + - *
/// / ^ and parentheses; juxtaposition multiplies.  Exponents and bracket
/// indices are integer expressions over the environment (q, p, m and family
/// parameters).
Rational evaluate_formula(const std::string& formula, const FieldPtr& field, const FormulaEnv& env = {});

/// Integer expression over the environment; throws UsageError on unknown
/// names or inexact division and BudgetExceeded on overflow.
long long evaluate_int(const std::string& expr, const FormulaEnv& env);

struct FamilyParam {
  std::string name;
  std::string min;
  std::string max;
};

/// One catalog record: either a single k or a family k(params).
struct CatalogEntry {
  std::vector<unsigned> qs;
  SumKind kind = SumKind::kPK;
  std::optional<std::uint64_t> k;
  std::string family;
  std::string k_expr;
  std::vector<FamilyParam> params;
  std::string formula;
  std::string note;

  nlohmann::json to_json() const;
  static CatalogEntry from_json(const nlohmann::json& j);
};

/// A lookup hit: the entry, the parameter values, and the p-power
/// normalization k = k0 p^e under which it matched.
struct CatalogMatch {
  CatalogEntry entry;
  FormulaEnv env;
  std::uint64_t k0 = 0;
  unsigned e = 0;

  /// The formula for k0 raised to the p^e power.
  Rational evaluate(const FieldPtr& field) const;
  std::string describe() const;
};

class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {}

  static Catalog from_json(const nlohmann::json& j);
  static Catalog load(const std::filesystem::path& path);
  /// The shipped catalog: $PRIMESYM_CATALOG, then the source tree, then the
  /// install prefix.
  static Catalog builtin();
  static std::filesystem::path builtin_path();

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  nlohmann::json to_json() const;

  /// Matches k directly or after removing factors of p.  GP and PK coincide
  /// in characteristic 2.
  std::optional<CatalogMatch> lookup(unsigned q, std::uint64_t k, SumKind kind = SumKind::kPK) const;

 private:
  std::vector<CatalogEntry> entries_;
};

/// Valuation of (sum - candidate) through the final horizon of the run.  Zero
/// to horizon is reported as a lower bound e(k) > horizon.
ValuationReport error_valuation(const PartialSumResult& result, const Rational& candidate);

}  // namespace primesym
