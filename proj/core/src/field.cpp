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

#include "primesym/field.hpp"

#include <sstream>

#include "primesym/error.hpp"

namespace primesym {

namespace {

std::string digits_to_string(const std::vector<unsigned>& digits) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || digits[i] != 1) os << digits[i];
    if (i >= 1) os << "u";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

// Remainder of a by the monic b over F_p; digit vectors lowest first.
std::vector<unsigned> digit_mod(std::vector<unsigned> a, const std::vector<unsigned>& b,
                                unsigned p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

std::uint64_t digits_code(const std::vector<unsigned>& digits, unsigned p) {
  std::uint64_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) code = code * p + digits[i];
  return code;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_over_prime_field(unsigned p, const std::vector<unsigned>& digits) {
  const std::size_t m = digits.size() - 1;
  if (m == 0 || digits.back() != 1) return false;
  if (m == 1) return true;
  // Every monic divisor of degree e <= m/2, enumerated by its tail code.
  for (std::size_t e = 1; 2 * e <= m; ++e) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < e; ++i) count *= p;
    for (std::uint64_t tail = 0; tail < count; ++tail) {
      std::vector<unsigned> divisor(e + 1);
      std::uint64_t t = tail;
      for (std::size_t i = 0; i < e; ++i) {
        divisor[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      divisor[e] = 1;
      const auto r = digit_mod(digits, divisor, p);
      bool zero = true;
      for (unsigned c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<unsigned> default_modulus(unsigned p, unsigned m) {
  std::uint64_t base = 1;
  for (unsigned i = 0; i < m; ++i) base *= p;
  for (std::uint64_t tail = 0; tail < base; ++tail) {
    std::vector<unsigned> digits(m + 1);
    std::uint64_t t = tail;
    for (unsigned i = 0; i < m; ++i) {
      digits[i] = static_cast<unsigned>(t % p);
      t /= p;
    }
    digits[m] = 1;
    if (is_irreducible_over_prime_field(p, digits)) return digits;
  }
  throw FieldError("no irreducible polynomial found; p is not prime?");
}

FieldPtr FieldSpec::make(unsigned p, unsigned m, std::optional<std::uint64_t> modulus_code) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw FieldError("field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(m) +
                       " exceeds the supported maximum " + std::to_string(kMaxOrder));
    }
  }
  std::vector<unsigned> modulus;
  if (modulus_code) {
    std::uint64_t c = *modulus_code;
    while (c > 0) {
      modulus.push_back(static_cast<unsigned>(c % p));
      c /= p;
    }
    if (modulus.size() != m + 1 || modulus.back() != 1) {
      throw FieldError("modulus " + digits_to_string(modulus) + " (code " +
                       std::to_string(*modulus_code) + ") is not monic of degree " +
                       std::to_string(m));
    }
    if (!is_irreducible_over_prime_field(p, modulus)) {
      throw FieldError("modulus " + digits_to_string(modulus) + " (code " +
                       std::to_string(*modulus_code) + ") is reducible over F_" +
                       std::to_string(p));
    }
  } else {
    modulus = default_modulus(p, m);
  }
  return FieldPtr(new FieldSpec(p, m, std::move(modulus)));
}

FieldPtr FieldSpec::of_order(unsigned q, std::optional<std::uint64_t> modulus_code) {
  if (q < 2) throw FieldError("field order must be at least 2");
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned m = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw FieldError(std::to_string(q) + " is not a prime power");
  return make(p, m, modulus_code);
}

FieldPtr FieldSpec::parse(const std::string& name) {
  const auto caret = name.find('^');
  const auto slash = name.find('/');
  if (caret == std::string::npos || slash == std::string::npos || slash < caret) {
    throw FieldError("malformed field label '" + name + "', expected p^m/modulus-code");
  }
  try {
    const unsigned p = static_cast<unsigned>(std::stoul(name.substr(0, caret)));
    const unsigned m = static_cast<unsigned>(std::stoul(name.substr(caret + 1, slash - caret - 1)));
    const std::uint64_t code = std::stoull(name.substr(slash + 1));
    return make(p, m, code);
  } catch (const std::logic_error&) {
    throw FieldError("malformed field label '" + name + "'");
  }
}

FieldSpec::FieldSpec(unsigned p, unsigned m, std::vector<unsigned> modulus)
    : p_(p), m_(m), q_(1), char2_(p == 2), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < m_; ++i) q_ *= p_;
  modulus_code_ = digits_code(modulus_, p_);

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    for (unsigned b = 0; b < q_; ++b) {
      add_[index(static_cast<Elem>(a), static_cast<Elem>(b))] =
          add_reference(static_cast<Elem>(a), static_cast<Elem>(b));
      mul_[index(static_cast<Elem>(a), static_cast<Elem>(b))] =
          mul_reference(static_cast<Elem>(a), static_cast<Elem>(b));
    }
  }
  for (unsigned a = 0; a < q_; ++a) {
    for (unsigned b = 0; b < q_; ++b) {
      if (add_[index(static_cast<Elem>(a), static_cast<Elem>(b))] == 0) {
        neg_[a] = static_cast<Elem>(b);
      }
      if (mul_[index(static_cast<Elem>(a), static_cast<Elem>(b))] == 1) {
        inv_[a] = static_cast<Elem>(b);
      }
    }
  }
  for (unsigned a = 0; a < q_; ++a) {
    Elem x = 1;
    for (unsigned i = 0; i < p_; ++i) x = mul_[index(x, static_cast<Elem>(a))];
    frob_[a] = x;
  }
}

std::string FieldSpec::name() const {
  return std::to_string(p_) + "^" + std::to_string(m_) + "/" + std::to_string(modulus_code_);
}

Elem FieldSpec::generator() const {
  if (m_ > 1) return static_cast<Elem>(p_);
  return from_int(static_cast<long long>(p_ - modulus_[0]));
}

Elem FieldSpec::inv(Elem a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
  return inv_[a];
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem FieldSpec::frobenius(Elem a, unsigned s) const {
  for (unsigned i = 0; i < s % m_; ++i) a = frob_[a];
  return a;
}

Elem FieldSpec::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<unsigned> FieldSpec::digits(Elem a) const {
  std::vector<unsigned> d(m_);
  unsigned c = a;
  for (unsigned i = 0; i < m_; ++i) {
    d[i] = c % p_;
    c /= p_;
  }
  return d;
}

Elem FieldSpec::from_digits(const std::vector<unsigned>& d) const {
  return static_cast<Elem>(digits_code(d, p_));
}

Elem FieldSpec::add_reference(Elem a, Elem b) const {
  auto da = digits(a);
  const auto db = digits(b);
  for (unsigned i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
  return from_digits(da);
}

Elem FieldSpec::mul_reference(Elem a, Elem b) const {
  const auto da = digits(a);
  const auto db = digits(b);
  std::vector<unsigned> prod(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  auto r = digit_mod(std::move(prod), modulus_, p_);
  r.resize(m_, 0);
  return from_digits(r);
}

FieldElement::FieldElement(FieldPtr field, Elem code) : field_(std::move(field)), code_(code) {
  if (code_ >= field_->q()) {
    throw FieldError("element code " + std::to_string(code_) + " out of range for " +
                     field_->name());
  }
}

void FieldElement::check_same(const FieldElement& rhs) const {
  if (field_ != rhs.field_ && !field_->same_as(*rhs.field_)) {
    throw FieldMismatch("operands from " + field_->name() + " and " + rhs.field_->name());
  }
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  check_same(rhs);
  return {field_, field_->add(code_, rhs.code_)};
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  check_same(rhs);
  return {field_, field_->sub(code_, rhs.code_)};
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  check_same(rhs);
  return {field_, field_->mul(code_, rhs.code_)};
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
  check_same(rhs);
  return {field_, field_->div(code_, rhs.code_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }

FieldElement FieldElement::inverse() const { return {field_, field_->inv(code_)}; }

FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }

FieldElement FieldElement::frobenius() const { return {field_, field_->frobenius(code_)}; }

bool FieldElement::in_prime_subfield() const { return field_->in_prime_subfield(code_); }

bool FieldElement::operator==(const FieldElement& rhs) const {
  check_same(rhs);
  return code_ == rhs.code_;
}

std::vector<FieldElement> enumerate(const FieldPtr& field) {
  std::vector<FieldElement> out;
  out.reserve(field->q());
  for (unsigned c = 0; c < field->q(); ++c) out.emplace_back(field, static_cast<Elem>(c));
  return out;
}

}  // namespace primesym
