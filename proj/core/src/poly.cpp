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

#include "primesym/poly.hpp"

#include <algorithm>
#include <sstream>

#include "primesym/error.hpp"

namespace primesym {

namespace {

using Words = std::vector<std::uint64_t>;

Words pack_gf2(const std::vector<Elem>& coeffs) {
  Words w((coeffs.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i]) w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return w;
}

std::vector<Elem> unpack_gf2(const Words& w, std::size_t bits) {
  std::vector<Elem> c(bits, 0);
  for (std::size_t i = 0; i < bits; ++i) c[i] = static_cast<Elem>((w[i / 64] >> (i % 64)) & 1);
  return c;
}

// dst ^= src << shift (bit shift), dst large enough.
void xor_shifted(Words& dst, const Words& src, std::size_t shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::uint64_t v = src[i];
    if (!v) continue;
    dst[i + ws] ^= v << bs;
    if (bs != 0 && i + ws + 1 < dst.size()) dst[i + ws + 1] ^= v >> (64 - bs);
  }
}

bool test_bit(const Words& w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1; }

std::vector<unsigned> prime_divisors(unsigned long n) {
  std::vector<unsigned> out;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<unsigned>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

}  // namespace

Poly::Poly(FieldPtr field) : field_(std::move(field)) {}

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  trim();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::t(FieldPtr field) { return monomial(std::move(field), 1, 1); }

Poly Poly::decode(FieldPtr field, std::uint64_t code) {
  std::vector<Elem> v;
  const unsigned q = field->q();
  while (code > 0) {
    v.push_back(static_cast<Elem>(code % q));
    code /= q;
  }
  return Poly(std::move(field), std::move(v));
}

Poly Poly::monic_from_tail(FieldPtr field, std::size_t degree, std::uint64_t tail) {
  std::vector<Elem> v(degree + 1, 0);
  const unsigned q = field->q();
  for (std::size_t i = 0; i < degree; ++i) {
    v[i] = static_cast<Elem>(tail % q);
    tail /= q;
  }
  v[degree] = 1;
  return Poly(std::move(field), std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void Poly::check_field(const Poly& rhs) const {
  if (field_ != rhs.field_ && !field_->same_as(*rhs.field_)) {
    throw FieldMismatch("polynomials over " + field_->name() + " and " + rhs.field_->name());
  }
}

std::size_t Poly::nonzero_terms() const {
  return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                [](Elem c) { return c != 0; }));
}

std::uint64_t Poly::encode() const {
  std::uint64_t code = 0;
  const std::uint64_t q = field_->q();
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    std::uint64_t next;
    if (__builtin_mul_overflow(code, q, &next) || __builtin_add_overflow(next, coeffs_[i], &next)) {
      throw BudgetExceeded("polynomial of degree " + std::to_string(degree()) +
                           " does not fit a 64-bit encoding over F_" + std::to_string(q));
    }
    code = next;
  }
  return code;
}

Poly Poly::operator-() const {
  Poly r(field_);
  r.coeffs_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_->neg(coeffs_[i]);
  return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
  check_field(rhs);
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    coeffs_[i] = field_->add(coeffs_[i], rhs.coeffs_[i]);
  }
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  check_field(rhs);
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    coeffs_[i] = field_->sub(coeffs_[i], rhs.coeffs_[i]);
  }
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
  *this = *this * rhs;
  return *this;
}

Poly Poly::scaled(Elem c) const {
  if (c == 0) return Poly(field_);
  Poly r(field_);
  r.coeffs_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_->mul(coeffs_[i], c);
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(lead()));
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly(field_);
  std::vector<Elem> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = field_->mul(field_->from_int(static_cast<long long>(i)), coeffs_[i]);
  }
  return Poly(field_, std::move(d));
}

Elem Poly::evaluate(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
  return acc;
}

Poly Poly::shifted(std::size_t n) const {
  if (is_zero()) return *this;
  std::vector<Elem> v(n, 0);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return Poly(field_, std::move(v));
}

Poly Poly::frobenius_power(unsigned s) const {
  if (is_zero()) return *this;
  std::size_t stride = 1;
  for (unsigned i = 0; i < s; ++i) stride *= field_->p();
  std::vector<Elem> v((coeffs_.size() - 1) * stride + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * stride] = field_->frobenius(coeffs_[i], s);
  return Poly(field_, std::move(v));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Elem c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    const bool show_coeff = c != 1 || i == 0;
    if (show_coeff) {
      if (field_->m() == 1) {
        os << static_cast<unsigned>(c);
      } else {
        os << "{" << static_cast<unsigned>(c) << "}";
      }
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

bool operator==(const Poly& a, const Poly& b) {
  a.check_field(b);
  return a.coeffs_ == b.coeffs_;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly multiply_schoolbook(const Poly& a, const Poly& b) {
  const auto& f = *a.field();
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<Elem> r(ca.size() + cb.size() - 1, 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      r[i + j] = f.add(r[i + j], f.mul(ca[i], cb[j]));
    }
  }
  return Poly(a.field(), std::move(r));
}

Poly multiply_gf2_packed(const Poly& a, const Poly& b) {
  if (a.field()->q() != 2) throw UsageError("packed GF(2) multiplication needs q = 2");
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  const Words wa = pack_gf2(a.coeffs());
  const Words wb = pack_gf2(b.coeffs());
  const std::size_t bits = a.coeffs().size() + b.coeffs().size() - 1;
  Words r((bits + 63) / 64 + 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (test_bit(wa, i)) xor_shifted(r, wb, i);
  }
  return Poly(a.field(), unpack_gf2(r, bits));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.field() != b.field() && !a.field()->same_as(*b.field())) {
    throw FieldMismatch("polynomials over " + a.field()->name() + " and " + b.field()->name());
  }
  if (a.field()->q() == 2 && a.coeffs().size() > 64 && b.coeffs().size() > 64) {
    return multiply_gf2_packed(a, b);
  }
  return multiply_schoolbook(a, b);
}

namespace {

DivMod divmod_gf2(const Poly& a, const Poly& b) {
  const std::size_t da = a.coeffs().size() - 1;
  const std::size_t db = b.coeffs().size() - 1;
  Words wa = pack_gf2(a.coeffs());
  wa.push_back(0);
  const Words wb = pack_gf2(b.coeffs());
  std::vector<Elem> quot(da - db + 1, 0);
  for (std::size_t i = da + 1; i-- > db;) {
    if (test_bit(wa, i)) {
      quot[i - db] = 1;
      xor_shifted(wa, wb, i - db);
    }
  }
  return {Poly(a.field(), std::move(quot)), Poly(a.field(), unpack_gf2(wa, db))};
}

}  // namespace

DivMod divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.field() != b.field() && !a.field()->same_as(*b.field())) {
    throw FieldMismatch("polynomials over " + a.field()->name() + " and " + b.field()->name());
  }
  if (a.degree() < b.degree()) return {Poly(a.field()), a};
  const auto& f = *a.field();
  if (f.q() == 2 && b.coeffs().size() > 64) return divmod_gf2(a, b);
  std::vector<Elem> rem = a.coeffs();
  const auto& cb = b.coeffs();
  const std::size_t db = cb.size() - 1;
  const Elem inv_lead = f.inv(cb.back());
  std::vector<Elem> quot(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    const Elem c = rem[i];
    if (c == 0) continue;
    const Elem factor = f.mul(c, inv_lead);
    quot[i - db] = factor;
    const std::size_t shift = i - db;
    for (std::size_t j = 0; j <= db; ++j) {
      if (cb[j]) rem[shift + j] = f.sub(rem[shift + j], f.mul(factor, cb[j]));
    }
  }
  rem.resize(db);
  return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
  const FieldPtr& field = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(field, 1), s1(field);
  Poly t0(field), t1 = Poly::constant(field, 1);
  while (!r1.is_zero()) {
    auto [quot, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly s2 = s0 - quot * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - quot * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem inv = field->inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly pow(const Poly& base, std::uint64_t e) {
  Poly result = Poly::constant(base.field(), 1);
  Poly b = base;
  while (e > 0) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  Poly result = Poly::constant(base.field(), 1) % modulus;
  Poly b = base % modulus;
  while (e > 0) {
    if (e & 1) result = (result * b) % modulus;
    e >>= 1;
    if (e) b = (b * b) % modulus;
  }
  return result;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw UsageError("irreducibility is only defined for positive degree");
  const Poly g = f.monic();
  const auto d = static_cast<unsigned long>(g.degree());
  if (d == 1) return true;
  if (g.coeff(0) == 0) return false;
  const FieldPtr& field = g.field();
  const Poly t = Poly::t(field);
  const auto primes = prime_divisors(d);
  std::vector<unsigned long> checkpoints;
  for (unsigned r : primes) checkpoints.push_back(d / r);
  // x_i = t^{q^i} mod g.
  Poly x = t % g;
  for (unsigned long i = 1; i <= d; ++i) {
    x = powmod(x, field->q(), g);
    if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
      if (!gcd(g, x - t).is_one()) return false;
    }
  }
  return x == t % g;
}

Poly bracket(const FieldPtr& field, unsigned n) {
  if (n == 0) return Poly(field);
  std::uint64_t e = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(e, field->q(), &e) || e > (std::uint64_t{1} << 32)) {
      throw BudgetExceeded("[" + std::to_string(n) + "] over F_" + std::to_string(field->q()) +
                           " is too large");
    }
  }
  std::vector<Elem> v(e + 1, 0);
  v[e] = 1;
  v[1] = field->neg(1);
  return Poly(field, std::move(v));
}

}  // namespace primesym
