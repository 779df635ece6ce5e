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

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "primesym/error.hpp"
#include "primesym/experiments.hpp"

namespace primesym {

namespace {

/// n with base^n == x, n >= 1, or nullopt.
std::optional<unsigned> exact_log(std::uint64_t base, std::uint64_t x) {
  if (base < 2 || x < base) return std::nullopt;
  unsigned n = 0;
  while (x % base == 0) {
    x /= base;
    ++n;
  }
  if (x != 1) return std::nullopt;
  return n;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_prime_number(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// (n, j) with k = 2 * 4^n - 4^j - 1 and 1 <= j <= n.
std::optional<std::pair<unsigned, unsigned>> q4_vanishing_family(std::uint64_t k) {
  for (unsigned n = 1; n <= 30; ++n) {
    const std::uint64_t top = 2 * ipow(4, n);
    if (top > k + 1 + ipow(4, n)) break;
    for (unsigned j = 1; j <= n; ++j) {
      if (top - ipow(4, j) - 1 == k) return std::make_pair(n, j);
    }
  }
  return std::nullopt;
}

std::string fmt_opt(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

long guessed_horizon_need(const std::vector<Guess>& guesses) {
  long need = 0;
  for (const Guess& g : guesses) {
    if (!g.zero) need = std::max(need, g.value);
  }
  return need;
}

std::optional<bool> decide(const Guess& g, const ValuationReport& v) {
  if (g.zero) return !v.exact();
  if (v.exact()) return v.value == g.value;
  if (v.value > g.value) return false;
  return std::nullopt;
}

}  // namespace

std::vector<Guess> finite_level_guesses(unsigned q, SumKind kind, std::uint64_t k, unsigned d) {
  if (q == 2 && kind != SumKind::kPower) kind = SumKind::kPK;
  std::vector<Guess> out;
  if (kind != SumKind::kPK) return out;
  auto add = [&](const char* quantity, long value, const char* source) {
    out.push_back(Guess{quantity, value, false, source});
  };

  if (q == 2 && k == 1) {
    if (auto n = exact_log(2, d); n && *n > 2) add("p_d", static_cast<long>(ipow(2, *n + 1) + 2), "I: 2^(n+1)+2");
    if (auto n = exact_log(3, d)) add("p_d", static_cast<long>(d + d / 3), "I: 3^n+3^(n-1)");
    if (auto n = exact_log(5, d)) add("p_d", static_cast<long>(d + d / 5), "I: 5^n+5^(n-1)");
  }
  if (q > 2 && is_prime_number(q) && k == q - 1 && (d == 2 || d == 3)) {
    add("p_d", static_cast<long>(q * (q - 1)), "II: q(q-1)");
  }
  if (q > 2 && (q & (q - 1)) == 0) {
    if (auto l = exact_log(q, k + 1)) {
      const long ql = static_cast<long>(ipow(q, *l));
      if (d == 3) add("p_d", ql * (q - 1), "II: q^l(q-1)");
      if (q == 4) {
        if (d == 2) add("p_d", ql * 3, "II: 4^l*3");
        if (d == 4) add("p_d", 2 * ql * 3, "II: 2*4^l*3");
        if (d == 3) {
          long b = 24;
          for (unsigned i = 1; i < *l; ++i) b = 4 * b + 12;
          add("p_le_d", b, "II: b_l");
        }
        const long k1 = static_cast<long>(k) + 1;
        if (d == 8) add("p_d", 18 * k1, "III: 18(k+1)");
        if (d == 4) add("p_d", 6 * k1, "III: 6(k+1)");
        if (d == 2) add("p_d", 3 * k1, "III: 3(k+1)");
      }
    }
  }
  if (q == 2 && k > 3 && d == 17 && exact_log(2, k + 1)) add("e_le_d", static_cast<long>(18 * k + 6), "III: 18k+6");
  if (q == 4) {
    if (const auto fam = q4_vanishing_family(k)) {
      const long v = 9 * static_cast<long>(k) + 9;
      if (d == 7 || d == 8) add("p_le_d", v, "III: 9k+9");
      if (d == 5 && fam->first == fam->second && fam->first > 1) add("p_le_d", v, "III: 9k+9");
      if (d == 1) {
        if (fam->first == fam->second) {
          out.push_back(Guess{"p_d", 0, true, "C(ii): P_1(k) = 0"});
        } else {
          add("p_d", static_cast<long>(2 * k + ipow(4, fam->second) + 2), "C(ii): 2k+4^j+2");
        }
      }
    }
  }
  return out;
}

nlohmann::json ScanRow::to_json() const {
  nlohmann::json j{{"q", q},
                   {"field", field},
                   {"kind", to_string(kind)},
                   {"k", k},
                   {"d", d},
                   {"horizon", horizon},
                   {"p_d", p_d.to_json()},
                   {"p_le_d", p_le_d.to_json()},
                   {"e_le_d", e_le_d ? e_le_d->to_json() : nlohmann::json(nullptr)},
                   {"flags", flags.to_json()},
                   {"runtime_ms", runtime_ms}};
  nlohmann::json guesses = nlohmann::json::array();
  for (const Cell& c : cells) {
    guesses.push_back({{"quantity", c.guess.quantity},
                       {"guess", c.guess.zero ? nlohmann::json("zero") : nlohmann::json(c.guess.value)},
                       {"source", c.guess.source},
                       {"match", c.match ? nlohmann::json(*c.match) : nlohmann::json(nullptr)}});
  }
  j["guesses"] = guesses;
  return j;
}

std::vector<ScanRow> scan(const Manifest& m, const RunOptions& options, const Catalog& catalog) {
  const FieldPtr F = m.field_ptr();
  const unsigned q = F->q();
  std::vector<ScanRow> rows;
  for (std::uint64_t k : m.ks) {
    SumSpec spec;
    spec.field = F;
    spec.kind = m.kind;
    spec.k = k;
    spec.d_min = 1;
    spec.d_max = m.d_max;
    long need = 0;
    for (unsigned d = m.d_min; d <= m.d_max; ++d) {
      need = std::max(need, guessed_horizon_need(finite_level_guesses(q, m.kind, spec.effective_k(), d)));
    }
    spec.horizon = std::max(m.horizon.value_or(spec.auto_horizon()), need + 1);
    const PartialSumResult r = accumulate(spec, options);

    std::optional<LaurentSeries> candidate;
    if (const auto match = catalog.lookup(q, spec.effective_k(), m.kind)) {
      candidate = series_from_rational(match->evaluate(F), r.horizon);
    }
    for (unsigned d = m.d_min; d <= m.d_max; ++d) {
      const DegreeResult& dr = r.degree(d);
      ScanRow row;
      row.q = q;
      row.field = F->name();
      row.kind = m.kind;
      row.k = spec.effective_k();
      row.d = d;
      row.horizon = r.horizon;
      row.p_d = dr.valuation;
      const LaurentSeries& cum = r.cumulative_through(d);
      row.p_le_d = cum.valuation();
      if (candidate) row.e_le_d = (cum - *candidate).valuation();
      row.flags = dr.flags;
      row.runtime_ms = dr.runtime_ms;
      for (const Guess& g : finite_level_guesses(q, m.kind, row.k, d)) {
        ScanRow::Cell cell{g, std::nullopt};
        if (g.quantity == "p_d") {
          cell.match = decide(g, row.p_d);
        } else if (g.quantity == "p_le_d") {
          cell.match = decide(g, row.p_le_d);
        } else if (row.e_le_d) {
          cell.match = decide(g, *row.e_le_d);
        }
        row.cells.push_back(cell);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string csv_header() { return "q,kind,k,d,p_d,exact,div_q_qm1,eq_kd,has_dk_plus_1,runtime_ms\n"; }

namespace {

std::string csv_line(unsigned q, SumKind kind, std::uint64_t k, unsigned d, const ValuationReport& v,
                     const DegreeFlags& f, double runtime_ms) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", runtime_ms);
  std::ostringstream os;
  os << q << ',' << to_string(kind) << ',' << k << ',' << d << ',' << v.value << ','
     << (v.exact() ? "true" : "false") << ',' << fmt_opt(f.div_q_qm1) << ',' << fmt_opt(f.eq_kd) << ','
     << fmt_opt(f.has_dk_plus_1) << ',' << ms << '\n';
  return os.str();
}

}  // namespace

std::string csv_row(unsigned q, SumKind kind, std::uint64_t k, const DegreeResult& r) {
  return csv_line(q, kind, k, r.d, r.valuation, r.flags, r.runtime_ms);
}

std::string csv_row(const ScanRow& row) {
  return csv_line(row.q, row.kind, row.k, row.d, row.p_d, row.flags, row.runtime_ms);
}

bool is_squarefree(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return n >= 1;
}

bool equality_expected(unsigned q, unsigned d) {
  if (is_prime_number(q) && d % q == 0 && is_squarefree(d)) return true;
  return q == 2 && d % 4 == 0 && (d / 4) % 2 == 1 && is_squarefree(d / 4);
}

DegreeResult degree_sum_adaptive(const FieldPtr& field, SumKind kind, std::uint64_t k, unsigned d,
                                 long max_horizon, const RunOptions& options) {
  SumSpec spec;
  spec.field = field;
  spec.kind = kind;
  spec.k = k;
  spec.d_min = spec.d_max = d;
  const long kd = static_cast<long>(spec.effective_k() * d);
  long margin = 2L * field->q() * (field->q() - 1);
  for (;;) {
    spec.horizon = std::min(kd + margin, std::max(max_horizon, kd + 1));
    DegreeResult r = sum_over_degree(spec, d, options);
    if (r.valuation.exact() || *spec.horizon >= max_horizon) return r;
    margin *= 2;
  }
}

bool ValuationTheoremCheck::holds() const {
  return divisible && lower_bound && equality_matches && squarefree_criterion.value_or(true);
}

nlohmann::json ValuationTheoremCheck::to_json() const {
  return {{"q", q},
          {"k", k},
          {"d", d},
          {"horizon", horizon},
          {"p_d", p_d.to_json()},
          {"divisible", divisible},
          {"lower_bound", lower_bound},
          {"equality_predicted", equality_predicted},
          {"equality_matches", equality_matches},
          {"squarefree_criterion", squarefree_criterion ? nlohmann::json(*squarefree_criterion) : nlohmann::json(nullptr)},
          {"holds", holds()}};
}

ValuationTheoremCheck check_valuation_theorems(const FieldPtr& field, std::uint64_t k, unsigned d,
                                               const RunOptions& options) {
  const unsigned q = field->q();
  if (k % (q - 1) != 0) throw UsageError("the valuation theorems need (q - 1) | k");
  ValuationTheoremCheck c;
  c.q = q;
  c.k = k;
  c.d = d;
  const long kd = static_cast<long>(k * d);
  const long cap = 4 * kd + 16L * q * (q - 1);
  DegreeResult r = degree_sum_adaptive(field, SumKind::kPK, k, d, cap, options);
  c.horizon = r.series.horizon();
  c.p_d = r.valuation;
  bool zero = false;
  if (!r.valuation.exact()) {
    // An exact zero is certified through the degree bound when that is cheap.
    if (count_irreducibles(q, d) * k * d <= 50000) {
      const ExactnessCertificate cert = certify_exact(field, SumKind::kPK, k, d, d, options);
      zero = cert.zero;
      c.horizon = cert.bound;
      c.p_d = cert.valuation;
    }
  }
  c.equality_predicted = equality_expected(q, d);
  if (c.p_d.exact()) {
    c.divisible = c.p_d.value % static_cast<long>(q * (q - 1)) == 0;
    c.lower_bound = c.p_d.value >= kd;
    c.equality_matches = (c.p_d.value == kd) == c.equality_predicted;
  } else if (zero) {
    c.divisible = c.lower_bound = true;
    c.equality_matches = !c.equality_predicted;
  } else {
    c.lower_bound = c.p_d.value >= kd;
    c.equality_matches = !c.equality_predicted;
    c.divisible = false;  // undecided within the horizon
  }
  if (q == 2 && k % 2 == 1) {
    const bool present = r.series.horizon() >= kd + 1 && r.series.coefficient(kd + 1) != 0;
    c.squarefree_criterion = present == is_squarefree(d);
  }
  return c;
}

nlohmann::json PowerSumObservation::to_json() const {
  return {{"d", d},
          {"k", k},
          {"value", value.to_string()},
          {"degree", value.is_zero() ? -1 : value.degree()},
          {"in_c_or_c_bracket1", in_c_or_c_bracket1},
          {"const_times_linear_zero", const_times_linear_zero}};
}

std::vector<PowerSumObservation> powersum_observations(const FieldPtr& field, std::uint64_t k, unsigned d_min,
                                                       unsigned d_max) {
  const unsigned q = field->q();
  std::vector<PowerSumObservation> out;
  for (unsigned d = d_min; d <= d_max; ++d) {
    PowerSumObservation o;
    o.d = d;
    o.k = k;
    o.value = power_sum_primes(field, d, k);
    const Elem c0 = o.value.coeff(0);
    const Elem c1 = o.value.coeff(1);
    o.const_times_linear_zero = field->mul(c0, c1) == 0;
    // c or c [1] = c t^q - c t with c in the prime field.
    const Poly& v = o.value;
    if (v.degree() <= 0) {
      o.in_c_or_c_bracket1 = v.lead() < field->p();
    } else if (v.degree() == static_cast<long>(q) && v.nonzero_terms() == 2) {
      const Elem c = v.lead();
      o.in_c_or_c_bracket1 = c < field->p() && v.coeff(1) == field->neg(c);
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace primesym
