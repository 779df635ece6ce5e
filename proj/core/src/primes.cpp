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

#include "primesym/primes.hpp"

#include <algorithm>

#include "primesym/error.hpp"

namespace primesym {

namespace {

int moebius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

std::uint64_t tail_space(std::uint64_t q, unsigned d) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (__builtin_mul_overflow(n, q, &n) || n > (std::uint64_t{1} << 62)) {
      throw BudgetExceeded("q^d = " + std::to_string(q) + "^" + std::to_string(d) +
                           " exceeds the enumeration range");
    }
  }
  return n;
}

std::uint64_t count_irreducibles(std::uint64_t q, unsigned d) {
  if (d == 0) throw UsageError("count_irreducibles needs d >= 1");
  __int128 total = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    const int mu = moebius(e);
    if (mu == 0) continue;
    total += static_cast<__int128>(mu) * static_cast<__int128>(tail_space(q, d / e));
  }
  return static_cast<std::uint64_t>(total / d);
}

DegreeSieve::DegreeSieve(FieldPtr field, unsigned degree)
    : field_(std::move(field)), degree_(degree), size_(tail_space(field_->q(), degree)) {
  if (size_ > kSieveBudgetBits * 4) {
    throw BudgetExceeded("sieve for degree " + std::to_string(degree) + " over F_" +
                         std::to_string(field_->q()) + " exceeds the memory budget");
  }
  composite_.assign((size_ + 63) / 64, 0);
  for (unsigned e = 1; 2 * e <= degree_; ++e) {
    for (const Poly& f : primes_of_degree(field_, e)) {
      if (field_->q() == 2) {
        mark_multiples_gf2(f);
      } else {
        mark_multiples(f);
      }
    }
  }
}

void DegreeSieve::mark_multiples_gf2(const Poly& f) {
  // Bits are coefficients.  g runs over t^{d-e} + g' in Gray-code order, so
  // each step flips one bit of g' and XORs one shifted copy of f.
  const unsigned e = static_cast<unsigned>(f.degree());
  const unsigned free_bits = degree_ - e;
  std::uint64_t fb = 0;
  for (unsigned i = 0; i <= e; ++i) fb |= static_cast<std::uint64_t>(f.coeff(i)) << i;
  const std::uint64_t mask = (std::uint64_t{1} << degree_) - 1;
  std::uint64_t prod = fb << free_bits;
  mark(prod & mask);
  const std::uint64_t steps = std::uint64_t{1} << free_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    prod ^= fb << __builtin_ctzll(i);
    mark(prod & mask);
  }
}

void DegreeSieve::mark_multiples(const Poly& f) {
  // Odometer over the tail digits of g; the product's coefficients and its
  // encoding are updated incrementally, touching e + 1 positions per digit.
  const FieldSpec& F = *field_;
  const unsigned q = F.q();
  const unsigned e = static_cast<unsigned>(f.degree());
  const unsigned free_digits = degree_ - e;
  std::vector<std::uint64_t> qpow(degree_ + 1, 1);
  for (unsigned i = 1; i <= degree_; ++i) qpow[i] = qpow[i - 1] * q;

  std::vector<Elem> prod(degree_ + 1, 0);
  for (unsigned j = 0; j <= e; ++j) prod[free_digits + j] = f.coeff(j);
  std::uint64_t enc = 0;
  for (unsigned i = 0; i < degree_; ++i) enc += prod[i] * qpow[i];
  std::vector<Elem> g(free_digits, 0);
  const auto& fc = f.coeffs();

  auto apply = [&](unsigned digit, Elem delta) {
    for (unsigned j = 0; j <= e; ++j) {
      const unsigned pos = digit + j;
      if (pos >= degree_) break;
      const Elem old = prod[pos];
      const Elem now = F.add(old, F.mul(delta, fc[j]));
      enc += (static_cast<std::uint64_t>(now) - old) * qpow[pos];
      prod[pos] = now;
    }
  };

  mark(enc);
  while (true) {
    unsigned i = 0;
    while (i < free_digits && g[i] == q - 1) {
      apply(i, F.sub(0, static_cast<Elem>(q - 1)));
      g[i] = 0;
      ++i;
    }
    if (i == free_digits) break;
    const Elem old = g[i];
    const Elem now = static_cast<Elem>(old + 1);
    apply(i, F.sub(now, old));
    g[i] = now;
    mark(enc);
  }
}

PrimeStream::PrimeStream(FieldPtr field, unsigned degree, EnumMode mode)
    : field_(std::move(field)), degree_(degree), mode_(mode) {
  if (degree_ == 0) throw UsageError("prime streams need degree >= 1");
  hi_ = tail_space(field_->q(), degree_);
  if (mode_ == EnumMode::kAuto) {
    mode_ = hi_ <= kSieveBudgetBits ? EnumMode::kSieve : EnumMode::kTest;
  }
  if (mode_ == EnumMode::kSieve) sieve_ = std::make_shared<const DegreeSieve>(field_, degree_);
}

PrimeStream PrimeStream::subrange(std::uint64_t lo, std::uint64_t hi) const {
  PrimeStream s = *this;
  s.lo_ = std::max(lo, lo_);
  s.hi_ = std::max(s.lo_, std::min(hi, hi_));
  s.cursor_ = s.lo_;
  return s;
}

std::vector<PrimeStream> PrimeStream::split(std::size_t parts) const {
  if (parts == 0) parts = 1;
  std::vector<PrimeStream> out;
  const std::uint64_t span = hi_ - lo_;
  for (std::size_t i = 0; i < parts; ++i) {
    const std::uint64_t a = lo_ + static_cast<std::uint64_t>((static_cast<__int128>(span) * i) / parts);
    const std::uint64_t b =
        lo_ + static_cast<std::uint64_t>((static_cast<__int128>(span) * (i + 1)) / parts);
    out.push_back(subrange(a, b));
  }
  return out;
}

bool PrimeStream::is_prime_tail(std::uint64_t tail) const {
  if (sieve_) return sieve_->is_prime_tail(tail);
  return is_irreducible(Poly::monic_from_tail(field_, degree_, tail));
}

void PrimeStream::decode_tail(std::uint64_t tail, std::vector<Elem>& coeffs) const {
  const unsigned q = field_->q();
  for (unsigned i = 0; i < degree_; ++i) {
    coeffs[i] = static_cast<Elem>(tail % q);
    tail /= q;
  }
  coeffs[degree_] = 1;
}

std::optional<Poly> PrimeStream::next() {
  for (; cursor_ < hi_; ++cursor_) {
    if (is_prime_tail(cursor_)) {
      const std::uint64_t tail = cursor_++;
      return Poly::monic_from_tail(field_, degree_, tail);
    }
  }
  return std::nullopt;
}

PrimeStream iter_irreducibles(const FieldPtr& field, unsigned degree, EnumMode mode) {
  return PrimeStream(field, degree, mode);
}

std::vector<Poly> primes_of_degree(const FieldPtr& field, unsigned degree, EnumMode mode) {
  PrimeStream stream(field, degree, mode);
  std::vector<Poly> out;
  stream.for_each([&](const std::vector<Elem>& c) { out.emplace_back(field, c); });
  return out;
}

Poly product_primes_dividing(const FieldPtr& field, unsigned n) {
  Poly product = Poly::constant(field, 1);
  for (unsigned e = 1; e <= n; ++e) {
    if (n % e != 0) continue;
    for (const Poly& f : primes_of_degree(field, e)) product = product * f;
  }
  return product;
}

}  // namespace primesym
