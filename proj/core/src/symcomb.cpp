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

#include "primesym/symcomb.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "primesym/error.hpp"

namespace primesym {

namespace {

std::uint64_t index_of_e(unsigned k) { return (std::uint64_t{1} << k) - 1; }

void check_modulus(unsigned modulus) {
  if (modulus != 2 && modulus != 4) throw UsageError("SymPoly modulus must be 2 or 4");
}

EMonomial add_exps(const EMonomial& a, const EMonomial& b) {
  EMonomial r{};
  for (unsigned i = 0; i < kMaxE; ++i) r[i] = a[i] + b[i];
  return r;
}

// Recursive-descent parser for e-notation.
class Parser {
 public:
  Parser(const std::string& s, unsigned modulus) : s_(s), mod_(modulus) {}

  SymPoly parse() {
    SymPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("cannot parse e-notation at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '\\')) {
      if (s_[pos_] == '\\') {
        // LaTeX spacing commands such as "\ " or "\," are ignored.
        ++pos_;
        if (pos_ < s_.size() && !std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        continue;
      }
      ++pos_;
    }
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::uint64_t number() {
    skip();
    bool braced = false;
    if (pos_ < s_.size() && s_[pos_] == '{') {
      braced = true;
      ++pos_;
      skip();
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
      ++pos_;
    }
    if (braced) {
      if (!peek('}')) fail("expected '}'");
      ++pos_;
    }
    return v;
  }
  SymPoly expr() {
    SymPoly r = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == 'e' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }
  SymPoly term() {
    SymPoly r = factor();
    while (starts_factor()) r = r * factor();
    return r;
  }
  SymPoly factor() {
    SymPoly base = atom();
    if (peek('^')) {
      ++pos_;
      base = base.pow(number());
    }
    return base;
  }
  SymPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '(') {
      ++pos_;
      SymPoly r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (s_[pos_] == 'e') {
      ++pos_;
      if (!peek('_')) fail("expected '_' after e");
      ++pos_;
      const std::uint64_t i = number();
      for (unsigned k = 1; k <= kMaxE; ++k) {
        if (index_of_e(k) == i) return SymPoly::var(k, mod_);
      }
      fail("e_" + std::to_string(i) + " is not of the form e_{2^k-1} with k <= " + std::to_string(kMaxE));
    }
    return SymPoly::one(mod_).scaled(static_cast<unsigned>(number() % mod_));
  }

  const std::string& s_;
  unsigned mod_;
  std::size_t pos_ = 0;
};

}  // namespace

SymPoly::SymPoly(unsigned modulus) : modulus_(modulus) { check_modulus(modulus); }

SymPoly SymPoly::one(unsigned modulus) { return monomial(EMonomial{}, 1, modulus); }

SymPoly SymPoly::var(unsigned k, unsigned modulus) {
  if (k < 1 || k > kMaxE) throw UsageError("variable index out of range");
  EMonomial e{};
  e[k - 1] = 1;
  return monomial(e, 1, modulus);
}

SymPoly SymPoly::monomial(const EMonomial& exps, unsigned coeff, unsigned modulus) {
  SymPoly s(modulus);
  s.add_term(exps, coeff);
  return s;
}

SymPoly SymPoly::parse(const std::string& text, unsigned modulus) { return Parser(text, modulus).parse(); }

unsigned SymPoly::coefficient(const EMonomial& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void SymPoly::add_term(const EMonomial& e, unsigned c) {
  c %= modulus_;
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = (it->second + c) % modulus_;
    if (it->second == 0) terms_.erase(it);
  }
}

SymPoly SymPoly::mod2() const {
  SymPoly r(2);
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  return r;
}

SymPoly SymPoly::lift_to4() const {
  SymPoly r(4);
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  return r;
}

SymPoly& SymPoly::operator+=(const SymPoly& rhs) {
  if (rhs.modulus_ != modulus_) throw UsageError("SymPoly moduli differ");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& rhs) {
  if (rhs.modulus_ != modulus_) throw UsageError("SymPoly moduli differ");
  for (const auto& [e, c] : rhs.terms_) add_term(e, modulus_ - c);
  return *this;
}

SymPoly SymPoly::operator*(const SymPoly& rhs) const {
  if (rhs.modulus_ != modulus_) throw UsageError("SymPoly moduli differ");
  SymPoly r(modulus_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) r.add_term(add_exps(ea, eb), ca * cb);
  }
  return r;
}

SymPoly SymPoly::scaled(unsigned c) const {
  SymPoly r(modulus_);
  for (const auto& [e, x] : terms_) r.add_term(e, x * c);
  return r;
}

SymPoly SymPoly::pow(std::uint64_t e) const {
  SymPoly result = one(modulus_);
  SymPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<EMonomial, unsigned>> v(terms_.begin(), terms_.end());
  // Compare from the largest variable down; larger exponents first.
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    for (unsigned i = kMaxE; i-- > 0;) {
      if (a.first[i] != b.first[i]) return a.first[i] > b.first[i];
    }
    return false;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : v) {
    if (!first) os << " + ";
    first = false;
    bool any = false;
    if (c != 1) os << c;
    for (unsigned i = kMaxE; i-- > 0;) {
      if (e[i] == 0) continue;
      os << "e_" << index_of_e(i + 1);
      if (e[i] > 1) os << '^' << e[i];
      any = true;
    }
    if (!any && c == 1) os << '1';
  }
  return os.str();
}

std::uint64_t weight(const EMonomial& e) {
  std::uint64_t w = 0;
  for (unsigned i = 0; i < kMaxE; ++i) w += index_of_e(i + 1) * e[i];
  return w;
}

std::uint64_t PartitionR::weight() const {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < R.size(); ++i) w += index_of_e(static_cast<unsigned>(i + 1)) * R[i];
  return w;
}

std::uint64_t PartitionR::total() const {
  std::uint64_t s = 0;
  for (auto r : R) s += r;
  return s;
}

void for_each_restricted_partition(unsigned m, unsigned k_max, const std::function<void(const PartitionR&)>& fn) {
  if (m < 1) throw UsageError("restricted partitions need m >= 1");
  if (k_max == 0) {
    while (index_of_e(k_max + 1) <= m) ++k_max;
  }
  if (k_max > kMaxE) throw BudgetExceeded("at most " + std::to_string(kMaxE) + " variables are supported");
  PartitionR cur;
  cur.R.assign(k_max, 0);
  // Choose R_1 first (largest first), then R_2, ...; the last part takes the
  // remainder when it divides evenly.
  std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned idx, std::uint64_t rest) {
    const std::uint64_t part = index_of_e(idx + 1);
    if (idx + 1 == k_max) {
      if (rest % part == 0) {
        cur.R[idx] = static_cast<std::uint32_t>(rest / part);
        fn(cur);
      }
      cur.R[idx] = 0;
      return;
    }
    for (std::uint64_t r = rest / part + 1; r-- > 0;) {
      cur.R[idx] = static_cast<std::uint32_t>(r);
      rec(idx + 1, rest - r * part);
    }
    cur.R[idx] = 0;
  };
  rec(0, m);
}

std::vector<PartitionR> restricted_partitions(unsigned m, unsigned k_max) {
  std::vector<PartitionR> out;
  for_each_restricted_partition(m, k_max, [&](const PartitionR& r) { out.push_back(r); });
  return out;
}

FactorialMod4 factorial_mod4(std::uint64_t n) {
  FactorialMod4 f;
  // n! = 2^{floor(n/2)} (floor(n/2))! * (product of odd i <= n), and the odd
  // product is (-1)^{#(i <= n, i = 3 mod 4)} mod 4.
  while (n > 1) {
    const std::uint64_t threes = (n + 1) / 4;
    if (threes % 2 == 1) f.odd = 4 - f.odd;
    n /= 2;
    f.v2 += n;
  }
  return f;
}

bool lucas_odd(const PartitionR& R) {
  std::uint64_t seen = 0;
  for (auto r : R.R) {
    if (seen & r) return false;
    seen |= r;
  }
  return true;
}

unsigned ng_coefficient(const PartitionR& R, unsigned m, unsigned modulus) {
  check_modulus(modulus);
  if (R.weight() != m) {
    throw UsageError("partition has weight " + std::to_string(R.weight()) + ", expected " + std::to_string(m));
  }
  const std::uint64_t S = R.total();
  if (S == 0) throw UsageError("empty partition");
  std::uint64_t v = 0;
  std::uint64_t mm = m;
  while (mm % 2 == 0) {
    mm /= 2;
    ++v;
  }
  unsigned odd = static_cast<unsigned>(mm % 4);
  const FactorialMod4 top = factorial_mod4(S - 1);
  v += top.v2;
  odd = odd * top.odd % 4;
  for (auto r : R.R) {
    const FactorialMod4 f = factorial_mod4(r);
    if (f.v2 > v) throw ConsistencyError("Newton-Girard coefficient is not an integer");
    v -= f.v2;
    odd = odd * f.odd % 4;  // odd units mod 4 are their own inverses
  }
  unsigned value = v >= 2 ? 0u : (v == 1 ? 2u * (odd % 2) : odd);
  if ((m + S) % 2 == 1) value = (4 - value) % 4;
  value %= modulus;
  if (m % 2 == 1 && (value % 2 == 1) != lucas_odd(R)) {
    throw ConsistencyError("mod-2 Newton-Girard coefficient disagrees with the Lucas criterion");
  }
  return value;
}

SymPoly restricted_power_sum(unsigned m, unsigned modulus) {
  if (m > kMaxWeight) throw BudgetExceeded("weight " + std::to_string(m) + " exceeds " + std::to_string(kMaxWeight));
  SymPoly s(modulus);
  for_each_restricted_partition(m, 0, [&](const PartitionR& R) {
    const unsigned c = ng_coefficient(R, m, modulus);
    if (c == 0) return;
    EMonomial e{};
    for (std::size_t i = 0; i < R.R.size(); ++i) e[i] = R.R[i];
    s += SymPoly::monomial(e, c, modulus);
  });
  return s;
}

SymPoly Y_n(unsigned n) {
  if (n < 1) throw UsageError("Y_n needs n >= 1");
  const unsigned m = (1u << n) - 1;
  const SymPoly a = restricted_power_sum(m, 2).lift_to4();
  const SymPoly b = restricted_power_sum(2 * m, 4);
  const SymPoly diff = a * a - b;
  SymPoly y(2);
  for (const auto& [e, c] : diff.terms()) {
    if (c % 2 != 0) throw ConsistencyError("p_m^2 - p_{2m} has an odd coefficient");
    y += SymPoly::monomial(e, c / 2, 2);
  }
  return y;
}

namespace {

SymPoly e1_pow(std::uint64_t s) {
  EMonomial e{};
  e[0] = static_cast<std::uint32_t>(s);
  return SymPoly::monomial(e, 1, 2);
}

SymPoly E_pow(unsigned k, std::uint64_t s) {
  EMonomial e{};
  e[k - 1] = static_cast<std::uint32_t>(s);
  return SymPoly::monomial(e, 1, 2);
}

}  // namespace

SymPoly f_k(unsigned k) {
  SymPoly f = SymPoly::one(2);
  for (unsigned i = 0; i < k; ++i) f = f * e1_pow(std::uint64_t{1} << i) + X_n(i + 1);
  return f;
}

SymPoly X_n(unsigned n, XForm form) {
  if (n < 1) throw UsageError("X_n needs n >= 1");
  if (n > kMaxE) throw BudgetExceeded("X_n is supported for n <= " + std::to_string(kMaxE));
  SymPoly x(2);
  if (form == XForm::kRecursive) {
    SymPoly f = SymPoly::one(2);
    for (unsigned k = 0; k + 2 <= n; ++k) {
      x += E_pow(n - k, std::uint64_t{1} << k) * f;
      f = f * e1_pow(std::uint64_t{1} << k) + X_n(k + 1, form);
    }
    return x;
  }
  auto X = [&](unsigned j) { return j == 0 ? SymPoly::one(2) : X_n(j, form); };
  for (unsigned k = 0; k + 2 <= n; ++k) {
    SymPoly bracket_sum = X(k);
    const unsigned j_lo = form == XForm::kNestedCombined ? 0 : 1;
    for (unsigned j = j_lo; j < k; ++j) {
      bracket_sum += e1_pow((std::uint64_t{1} << k) - (std::uint64_t{1} << j)) * X(j);
    }
    x += E_pow(n - k, std::uint64_t{1} << k) * bracket_sum;
  }
  return x;
}

SymPoly second_half(unsigned n) {
  const SymPoly p = restricted_power_sum((1u << n) - 1, 2);
  SymPoly r(2);
  const std::uint64_t cap = (std::uint64_t{1} << (n - 1)) - 1;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] <= cap) r += SymPoly::monomial(e, c, 2);
  }
  return r;
}

Rational specialize_to_carlitz(const SymPoly& s, const CarlitzSeq& seq) {
  if (seq.field()->q() != 2) throw UsageError("specialization to Carlitz quantities is stated for q = 2");
  if (s.modulus() != 2) throw UsageError("specialization needs a mod-2 polynomial");
  const FieldPtr& F = seq.field();
  Rational total(F);
  for (const auto& [e, c] : s.terms()) {
    Poly den = Poly::constant(F, 1);
    for (unsigned i = 0; i < kMaxE; ++i) {
      if (e[i] != 0) den *= pow(seq.D(i + 1), e[i]);
    }
    total += Rational(Poly::constant(F, 1), den);
  }
  return total;
}

}  // namespace primesym
