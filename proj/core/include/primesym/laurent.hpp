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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "primesym/poly.hpp"
#include "primesym/rational.hpp"

namespace primesym {

/// Valuation at infinity (minus the t-degree), either exact with the
/// coefficient that witnesses it, or a lower bound "valuation >= value".
struct ValuationReport {
  enum class Kind { kExact, kLowerBound };

  Kind kind = Kind::kLowerBound;
  long value = 0;
  std::optional<Elem> witness;
  std::string context;

  bool exact() const { return kind == Kind::kExact; }
  static ValuationReport exact_at(long value, Elem witness, std::string context = {});
  static ValuationReport at_least(long value, std::string context = {});
  /// "= 4 (coeff 1)" or ">= 25".
  std::string to_string() const;
  nlohmann::json to_json() const;
};

/// A truncated element of K_infinity: sum over j of c_j t^{-j}, where every
/// c_j with j <= horizon is known exactly and nothing beyond the horizon is
/// stored.  Coefficients are kept densely from the first nonzero index; a
/// series with no nonzero coefficient up to its horizon is "zero to horizon"
/// and only bounds its valuation from below.
///
/// Arithmetic propagates horizons pessimistically: a result never carries a
/// coefficient that its operands do not determine.
class LaurentSeries {
 public:
  /// An empty placeholder with no field; assign a real series before use.
  LaurentSeries() = default;

  static LaurentSeries zero(FieldPtr field, long horizon);
  /// A polynomial viewed at infinity: t^i sits at index -i.
  static LaurentSeries from_poly(const Poly& f, long horizon);
  /// coeffs[i] is the coefficient of t^{-(first + i)}; entries past the
  /// horizon are dropped and leading zeros are stripped.
  static LaurentSeries from_dense(FieldPtr field, long first, std::vector<Elem> coeffs,
                                  long horizon);

  const FieldPtr& field() const { return field_; }
  long horizon() const { return horizon_; }
  bool is_zero_to_horizon() const { return coeffs_.empty(); }
  /// Index of the first nonzero coefficient, or horizon + 1.
  long first_index() const { return first_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  /// Coefficient of t^{-j}; throws HorizonError past the horizon.
  Elem coefficient(long j) const;

  ValuationReport valuation(std::string context = {}) const;
  LaurentSeries truncated(long horizon) const;
  /// True iff both series have the same coefficients for every j <= through.
  bool agrees_with(const LaurentSeries& other, long through) const;
  /// Same field, horizon and coefficients.
  bool identical(const LaurentSeries& other) const;

  LaurentSeries operator-() const;
  LaurentSeries scaled(Elem c) const;
  LaurentSeries frobenius_power(unsigned s) const;

  nlohmann::json to_json() const;
  static LaurentSeries from_json(const nlohmann::json& j);

  std::string to_string(std::size_t max_terms = 12) const;

 private:
  LaurentSeries(FieldPtr field, long horizon) : field_(std::move(field)), horizon_(horizon),
                                                first_(horizon + 1) {}

  FieldPtr field_;
  long horizon_ = -1;
  long first_ = 0;
  std::vector<Elem> coeffs_;
};

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
/// Result horizon min(h_a + v_b, h_b + v_a) with v the first nonzero index
/// (or horizon + 1).
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
/// Multiplication and division by an exact polynomial of degree D shift the
/// horizon by -D and +D respectively.
LaurentSeries mul_poly(const LaurentSeries& a, const Poly& f);
LaurentSeries div_poly(const LaurentSeries& a, const Poly& f);

/// Inverse by Newton iteration; throws HorizonError when `a` is zero to its
/// horizon.  A valuation-v input known through h gives horizon h - 2v.
LaurentSeries inverse(const LaurentSeries& a);
/// Coefficient recurrence; the oracle for `inverse`.
LaurentSeries inverse_schoolbook(const LaurentSeries& a);
LaurentSeries pow(const LaurentSeries& a, std::uint64_t e);

/// num/den expanded at infinity through t^{-horizon}.
LaurentSeries series_from_rational(const Poly& num, const Poly& den, long horizon);
LaurentSeries series_from_rational(const Rational& f, long horizon);

}  // namespace primesym
