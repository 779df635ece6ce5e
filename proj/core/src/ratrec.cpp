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

#include "primesym/ratrec.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "primesym/error.hpp"

#ifndef PRIMESYM_SOURCE_DATA_DIR
#define PRIMESYM_SOURCE_DATA_DIR ""
#endif
#ifndef PRIMESYM_INSTALL_DATA_DIR
#define PRIMESYM_INSTALL_DATA_DIR ""
#endif

namespace primesym {

nlohmann::json RationalCandidate::to_json() const {
  return nlohmann::json{{"num", num.to_string()},
                        {"den", den.to_string()},
                        {"max_deg", max_deg},
                        {"matched_through", matched_through}};
}

long default_max_deg(long horizon) { return std::max<long>(0, horizon / 2 - 1); }

std::optional<RationalCandidate> reconstruct(const LaurentSeries& series, long max_deg) {
  if (max_deg < 0) throw UsageError("max_deg must be non-negative");
  const FieldPtr& F = series.field();
  const long H = series.horizon();
  if (H < 2 * max_deg + 1) {
    throw HorizonError("reconstruction with degree bound " + std::to_string(max_deg) + " needs horizon >= " +
                       std::to_string(2 * max_deg + 1) + ", have " + std::to_string(H));
  }
  if (series.is_zero_to_horizon()) {
    return RationalCandidate{Poly(F), Poly::constant(F, 1), max_deg, H};
  }
  // A polynomial part is handled by dividing by t^s first.
  const long s = std::max<long>(0, -series.first_index());
  const long B = max_deg + s;
  const long N = H + s;
  if (N < 2 * B + 1) {
    throw HorizonError("series with polynomial part of degree " + std::to_string(s) + " needs horizon >= " +
                       std::to_string(2 * B + 1 - s));
  }
  std::vector<Elem> c(static_cast<std::size_t>(N + 1), 0);
  for (long j = series.first_index(); j <= H; ++j) c[static_cast<std::size_t>(j + s)] = series.coefficient(j);

  Poly r0 = Poly::monomial(F, 1, static_cast<std::size_t>(N + 1));
  Poly r1(F, c);
  Poly t0(F);
  Poly t1 = Poly::constant(F, 1);
  while (r1.degree() > B) {
    auto [quot, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly t2 = t0 - quot * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1.degree() > B) return std::nullopt;
  const Poly g = gcd(r1, t1);
  Poly P = r1 / g;
  Poly Q = t1 / g;
  if (Q.coeff(0) == 0) return std::nullopt;
  // Back to t: num(t) = t^B P(1/t), den(t) = t^B Q(1/t), then undo the shift.
  std::vector<Elem> num(static_cast<std::size_t>(B + 1), 0), den(static_cast<std::size_t>(B + 1), 0);
  for (long i = 0; i <= std::max(P.degree(), 0L); ++i) num[static_cast<std::size_t>(B - i)] = P.coeff(i);
  for (long i = 0; i <= Q.degree(); ++i) den[static_cast<std::size_t>(B - i)] = Q.coeff(i);
  Rational f(Poly(F, num), Poly(F, den));
  if (s > 0) f *= Rational(Poly::monomial(F, 1, static_cast<std::size_t>(s)));
  if (f.num().degree() > max_deg + s || f.den().degree() > max_deg) return std::nullopt;
  const LaurentSeries check = series_from_rational(f, H);
  if (!check.agrees_with(series, H)) return std::nullopt;
  return RationalCandidate{f.num(), f.den(), max_deg, H};
}

// ---------------------------------------------------------------------------
// Formula evaluation.

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long long integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s_[pos_] - '0', &v)) {
        throw BudgetExceeded("integer literal overflows");
      }
      ++pos_;
    }
    return v;
  }
  std::string identifier() {
    skip();
    std::string id;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      id += s_[pos_++];
    }
    if (id.empty()) fail("expected a name");
    return id;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("formula '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

void check_overflow(bool overflow) {
  if (overflow) throw BudgetExceeded("integer expression overflows");
}

long long int_pow(long long b, long long e) {
  if (e < 0) throw UsageError("negative integer exponent");
  long long r = 1;
  for (long long i = 0; i < e; ++i) check_overflow(__builtin_mul_overflow(r, b, &r));
  return r;
}

class IntParser {
 public:
  IntParser(Lexer& lex, const FormulaEnv& env) : lex_(lex), env_(env) {}

  long long expr() {
    long long v = term();
    while (true) {
      if (lex_.accept('+')) {
        const long long r = term();
        check_overflow(__builtin_add_overflow(v, r, &v));
      } else if (lex_.accept('-')) {
        const long long r = term();
        check_overflow(__builtin_sub_overflow(v, r, &v));
      } else {
        return v;
      }
    }
  }
  long long primary() {
    const char c = lex_.peek();
    if (c == '(') {
      lex_.expect('(');
      const long long v = expr();
      lex_.expect(')');
      return v;
    }
    if (c == '-') {
      lex_.expect('-');
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_.integer();
    const std::string id = lex_.identifier();
    auto it = env_.find(id);
    if (it == env_.end()) lex_.fail("unknown name '" + id + "'");
    return it->second;
  }

 private:
  long long term() {
    long long v = power();
    while (true) {
      if (lex_.accept('*')) {
        const long long r = power();
        check_overflow(__builtin_mul_overflow(v, r, &v));
      } else if (lex_.peek() == '/') {
        lex_.expect('/');
        const long long r = power();
        if (r == 0 || v % r != 0) lex_.fail("inexact integer division");
        v /= r;
      } else {
        return v;
      }
    }
  }
  long long power() {
    const long long b = primary();
    if (lex_.accept('^')) return int_pow(b, power());
    return b;
  }

  Lexer& lex_;
  const FormulaEnv& env_;
};

class RationalParser {
 public:
  RationalParser(Lexer& lex, const FieldPtr& F, const FormulaEnv& env) : lex_(lex), F_(F), env_(env), ints_(lex, env) {}

  Rational expr() {
    Rational v(F_);
    if (lex_.accept('-')) {
      v = -term();
    } else {
      v = term();
    }
    while (true) {
      if (lex_.accept('+')) {
        v += term();
      } else if (lex_.accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

 private:
  bool starts_atom() {
    const char c = lex_.peek();
    return c == '[' || c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }
  Rational term() {
    Rational v = power();
    while (true) {
      if (lex_.accept('*')) {
        v *= power();
      } else if (lex_.accept('/')) {
        const Rational d = power();
        if (d.is_zero()) lex_.fail("division by zero");
        v /= d;
      } else if (starts_atom()) {
        v *= power();
      } else {
        return v;
      }
    }
  }
  Rational power() {
    Rational b = atom();
    if (lex_.accept('^')) {
      const long long e = ints_.primary();
      if (e < 0) lex_.fail("negative exponent");
      b = pow(b, static_cast<std::uint64_t>(e));
    }
    return b;
  }
  Rational atom() {
    const char c = lex_.peek();
    if (c == '(') {
      lex_.expect('(');
      Rational v = expr();
      lex_.expect(')');
      return v;
    }
    if (c == '[') {
      lex_.expect('[');
      const long long n = ints_.expr();
      lex_.expect(']');
      if (n < 0) lex_.fail("bracket index must be non-negative");
      return Rational(bracket(F_, static_cast<unsigned>(n)));
    }
    if (c == 't') {
      lex_.identifier();
      return Rational(Poly::t(F_));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const long long v = lex_.integer();
      return Rational(Poly::constant(F_, F_->from_int(v)));
    }
    lex_.fail("unexpected character");
  }

  Lexer& lex_;
  const FieldPtr& F_;
  const FormulaEnv& env_;
  IntParser ints_;
};

FormulaEnv field_env(const FieldPtr& F, FormulaEnv env) {
  env.emplace("q", F->q());
  env.emplace("p", F->p());
  env.emplace("m", F->m());
  return env;
}

bool is_prime_power_of(unsigned q, unsigned& p_out) {
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    unsigned x = q;
    while (x % p == 0) x /= p;
    p_out = p;
    return x == 1;
  }
  return false;
}

}  // namespace

long long evaluate_int(const std::string& expr, const FormulaEnv& env) {
  Lexer lex(expr);
  IntParser p(lex, env);
  const long long v = p.expr();
  if (!lex.at_end()) lex.fail("trailing input");
  return v;
}

Rational evaluate_formula(const std::string& formula, const FieldPtr& field, const FormulaEnv& env) {
  const FormulaEnv full = field_env(field, env);
  Lexer lex(formula);
  RationalParser p(lex, field, full);
  Rational v = p.expr();
  if (!lex.at_end()) lex.fail("trailing input");
  return v;
}

// ---------------------------------------------------------------------------
// Catalog.

nlohmann::json CatalogEntry::to_json() const {
  nlohmann::json j;
  j["q"] = qs.size() == 1 ? nlohmann::json(qs.front()) : nlohmann::json(qs);
  if (kind != SumKind::kPK) j["kind"] = to_string(kind);
  if (k) {
    j["k_or_family"] = *k;
  } else {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : this->params) params.push_back({{"name", p.name}, {"min", p.min}, {"max", p.max}});
    j["k_or_family"] = {{"family", family}, {"k", k_expr}, {"params", params}};
  }
  j["formula"] = formula;
  if (!note.empty()) j["note"] = note;
  return j;
}

CatalogEntry CatalogEntry::from_json(const nlohmann::json& j) {
  try {
    CatalogEntry e;
    const auto& q = j.at("q");
    if (q.is_array()) {
      for (const auto& x : q) e.qs.push_back(x.get<unsigned>());
    } else {
      e.qs.push_back(q.get<unsigned>());
    }
    if (e.qs.empty()) throw UsageError("catalog entry lists no q");
    if (j.contains("kind")) e.kind = parse_sum_kind(j.at("kind").get<std::string>());
    const auto& kf = j.at("k_or_family");
    if (kf.is_number_integer()) {
      e.k = kf.get<std::uint64_t>();
    } else {
      e.family = kf.at("family").get<std::string>();
      e.k_expr = kf.at("k").get<std::string>();
      for (const auto& p : kf.value("params", nlohmann::json::array())) {
        e.params.push_back({p.at("name").get<std::string>(), p.at("min").get<std::string>(),
                            p.value("max", std::string("40"))});
      }
    }
    e.formula = j.at("formula").get<std::string>();
    e.note = j.value("note", std::string());
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(std::string("malformed catalog entry: ") + ex.what());
  }
}

Rational CatalogMatch::evaluate(const FieldPtr& field) const {
  Rational v = evaluate_formula(entry.formula, field, env);
  return e == 0 ? v : frobenius_power(v, e);
}

std::string CatalogMatch::describe() const {
  std::ostringstream os;
  os << entry.formula;
  if (!entry.family.empty()) {
    os << " [family " << entry.family;
    for (const auto& p : entry.params) os << ", " << p.name << "=" << env.at(p.name);
    os << "]";
  }
  if (e > 0) os << " raised to p^" << e << " (k = " << k0 << " p^" << e << ")";
  return os.str();
}

Catalog Catalog::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw UsageError("catalog must be a JSON list");
  std::vector<CatalogEntry> entries;
  for (const auto& e : j) entries.push_back(CatalogEntry::from_json(e));
  return Catalog(std::move(entries));
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read catalog " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("catalog " + path.string() + " is not valid JSON: " + ex.what());
  }
  return from_json(j);
}

std::filesystem::path Catalog::builtin_path() {
  if (const char* env = std::getenv("PRIMESYM_CATALOG"); env != nullptr && *env != '\0') return env;
  for (const char* dir : {PRIMESYM_SOURCE_DATA_DIR, PRIMESYM_INSTALL_DATA_DIR}) {
    if (*dir == '\0') continue;
    std::filesystem::path p = std::filesystem::path(dir) / "catalog.json";
    if (std::filesystem::exists(p)) return p;
  }
  throw UsageError("no catalog found; set PRIMESYM_CATALOG");
}

Catalog Catalog::builtin() { return load(builtin_path()); }

nlohmann::json Catalog::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : entries_) j.push_back(e.to_json());
  return j;
}

namespace {

bool kind_matches(SumKind entry, SumKind wanted, unsigned p) {
  if (entry == wanted) return true;
  auto pk_like = [](SumKind k) { return k == SumKind::kPK || k == SumKind::kGP; };
  return p == 2 && pk_like(entry) && pk_like(wanted);
}

// Enumerates parameter assignments; fn returns true to stop.
bool for_each_assignment(const std::vector<FamilyParam>& params, std::size_t i, FormulaEnv& env,
                         const std::function<bool(const FormulaEnv&)>& fn) {
  if (i == params.size()) return fn(env);
  long long lo, hi;
  try {
    lo = evaluate_int(params[i].min, env);
    hi = evaluate_int(params[i].max, env);
  } catch (const BudgetExceeded&) {
    return false;
  }
  for (long long v = lo; v <= hi; ++v) {
    env[params[i].name] = v;
    if (for_each_assignment(params, i + 1, env, fn)) return true;
  }
  env.erase(params[i].name);
  return false;
}

}  // namespace

std::optional<CatalogMatch> Catalog::lookup(unsigned q, std::uint64_t k, SumKind kind) const {
  unsigned p = 0;
  if (!is_prime_power_of(q, p)) throw UsageError(std::to_string(q) + " is not a prime power");
  unsigned m = 0;
  for (unsigned x = q; x > 1; x /= p) ++m;
  // Try k itself first, then k / p, k / p^2, ...
  std::uint64_t k0 = k;
  for (unsigned e = 0;; ++e) {
    for (const auto& entry : entries_) {
      if (!kind_matches(entry.kind, kind, p)) continue;
      if (std::find(entry.qs.begin(), entry.qs.end(), q) == entry.qs.end()) continue;
      if (entry.k) {
        if (*entry.k == k0) return CatalogMatch{entry, {}, k0, e};
        continue;
      }
      FormulaEnv env{{"q", q}, {"p", p}, {"m", m}};
      std::optional<FormulaEnv> hit;
      for_each_assignment(entry.params, 0, env, [&](const FormulaEnv& a) {
        try {
          const long long v = evaluate_int(entry.k_expr, a);
          if (v > 0 && static_cast<std::uint64_t>(v) == k0) {
            hit = a;
            return true;
          }
        } catch (const BudgetExceeded&) {
        }
        return false;
      });
      if (hit) {
        FormulaEnv params;
        for (const auto& fp : entry.params) params[fp.name] = hit->at(fp.name);
        return CatalogMatch{entry, params, k0, e};
      }
    }
    if (k0 % p != 0) return std::nullopt;
    k0 /= p;
  }
}

ValuationReport error_valuation(const PartialSumResult& result, const Rational& candidate) {
  const long fh = std::min(result.spec.final_horizon(), result.horizon);
  const LaurentSeries cand = series_from_rational(candidate, fh);
  const LaurentSeries err = (result.total().truncated(fh) - cand).truncated(fh);
  const std::string ctx = "error vs " + candidate.to_string();
  if (err.is_zero_to_horizon()) return ValuationReport::at_least(fh + 1, ctx);
  return ValuationReport::exact_at(err.first_index(), err.coeffs().front(), ctx);
}

}  // namespace primesym
