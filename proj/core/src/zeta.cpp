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

#include "primesym/zeta.hpp"

#include <algorithm>
#include <string>

#include "primesym/error.hpp"

namespace primesym {

namespace {

constexpr std::size_t kMaxOmegaEntries = std::size_t{1} << 24;

using Vec = std::vector<Elem>;

Vec dense_of(const LaurentSeries& s, long horizon) {
  Vec v(static_cast<std::size_t>(horizon + 1), 0);
  for (long j = std::max<long>(0, s.first_index()); j <= std::min(horizon, s.horizon()); ++j) {
    v[static_cast<std::size_t>(j)] = s.coefficient(j);
  }
  return v;
}

LaurentSeries series_of(const FieldPtr& F, Vec v, long horizon) {
  return LaurentSeries::from_dense(F, 0, std::move(v), horizon);
}

// acc += a * b on dense vectors indexed from 0 through the horizon.
void mul_acc(const FieldSpec& F, Vec& acc, const Vec& a, const Vec& b) {
  const std::size_t n = acc.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j] != 0) acc[i + j] = F.add(acc[i + j], F.mul(a[i], b[j]));
    }
  }
}

// 1 / a^k through the horizon.
Vec reciprocal_power(const Poly& a, std::uint64_t k, long horizon) {
  return dense_of(series_from_rational(Poly::constant(a.field(), 1), pow(a, k), horizon), horizon);
}

long determinable(std::uint64_t k, unsigned D) { return static_cast<long>(k * (D + 1)) - 1; }

}  // namespace

OmegaTable::OmegaTable(FieldPtr field, unsigned max_degree) : field_(std::move(field)), max_degree_(max_degree) {
  std::size_t total = 0;
  std::size_t block = 1;
  for (unsigned d = 0; d <= max_degree; ++d) {
    offset_.push_back(total);
    total += block;
    if (total > kMaxOmegaEntries) {
      throw BudgetExceeded("an Omega table over F_" + std::to_string(field_->q()) + " to degree " +
                           std::to_string(max_degree) + " exceeds the memory budget");
    }
    block *= field_->q();
  }
  offset_.push_back(total);

  const std::size_t n = total;
  std::vector<std::uint32_t> cofactor(n, 0);
  std::vector<bool> composite(n, false);
  const bool binary = field_->q() == 2;
  for (std::size_t a = 1; a < n; ++a) {
    if (composite[a]) continue;
    // a is prime: mark a*b for every monic b with 1 <= deg b <= D - deg a.
    const unsigned da = degree_at(a);
    const std::size_t b_end = offset_[max_degree - da + 1];
    const Poly pa = poly_at(a);
    for (std::size_t b = 1; b < b_end; ++b) {
      std::size_t m;
      if (binary) {
        // Over F_2 the index of a monic polynomial is its bit pattern minus one.
        const std::uint64_t bits_a = a + 1;
        std::uint64_t prod = 0;
        for (std::uint64_t x = b + 1, s = 0; x != 0; x >>= 1, ++s) {
          if (x & 1) prod ^= bits_a << s;
        }
        m = static_cast<std::size_t>(prod - 1);
      } else {
        m = index_of(multiply_schoolbook(pa, poly_at(b)));
      }
      if (!composite[m]) {
        composite[m] = true;
        cofactor[m] = static_cast<std::uint32_t>(b);
      }
    }
  }
  omega_.assign(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    omega_[i] = composite[i] ? static_cast<std::uint8_t>(omega_[cofactor[i]] + 1) : std::uint8_t{1};
  }
}

std::size_t OmegaTable::index_of(const Poly& monic) const {
  if (!monic.is_monic() || monic.degree() > static_cast<long>(max_degree_)) {
    throw UsageError("polynomial is not monic of degree <= " + std::to_string(max_degree_));
  }
  const unsigned d = static_cast<unsigned>(monic.degree());
  std::uint64_t tail = 0;
  for (std::size_t i = d; i-- > 0;) tail = tail * field_->q() + monic.coeff(i);
  return offset_[d] + tail;
}

unsigned OmegaTable::degree_at(std::size_t index) const {
  const auto it = std::upper_bound(offset_.begin(), offset_.end(), index);
  return static_cast<unsigned>(it - offset_.begin() - 1);
}

Poly OmegaTable::poly_at(std::size_t index) const {
  const unsigned d = degree_at(index);
  return Poly::monic_from_tail(field_, d, index - offset_[d]);
}

OmegaTable omega_sieve(const FieldPtr& field, unsigned max_degree) { return OmegaTable(field, max_degree); }

ZetaTrunc zeta_truncated(const OmegaTable& table, std::uint64_t k, std::optional<long> horizon) {
  const unsigned D = table.max_degree();
  const long limit = determinable(k, D);
  const long N = horizon.value_or(limit);
  if (N > limit) {
    throw HorizonError("zeta truncated at degree " + std::to_string(D) + " is determinable only through t^-" +
                       std::to_string(limit));
  }
  if (N < 0) throw UsageError("horizon must be non-negative");
  const FieldPtr& F = table.field();
  std::vector<Vec> acc(D + 1, Vec(static_cast<std::size_t>(N + 1), 0));
  acc[0][0] = 1;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const unsigned d = table.degree_at(i);
    if (static_cast<long>(k * d) > N) break;
    const Vec r = reciprocal_power(table.poly_at(i), k, N);
    Vec& slot = acc[table.omega_at(i)];
    for (std::size_t j = 0; j < slot.size(); ++j) slot[j] = F->add(slot[j], r[j]);
  }
  ZetaTrunc z;
  z.field = F;
  z.k = k;
  z.max_degree = D;
  z.horizon = N;
  for (auto& v : acc) z.slices.push_back(series_of(F, std::move(v), N));
  return z;
}

std::vector<LaurentSeries> euler_product_slices(const OmegaTable& table, std::uint64_t k, long horizon) {
  const unsigned D = table.max_degree();
  const FieldPtr& F = table.field();
  const std::size_t len = static_cast<std::size_t>(horizon + 1);
  std::vector<Vec> E(D + 1, Vec(len, 0));
  E[0][0] = 1;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (!table.is_prime_at(i)) continue;
    const long vd = static_cast<long>(k * table.degree_at(i));
    if (vd > horizon) break;
    // Powers u^j of u = 1/P^k for 1 <= j <= D while they stay inside the horizon.
    std::vector<Vec> u_pow{Vec(len, 0)};
    u_pow[0][0] = 1;
    const Vec u = reciprocal_power(table.poly_at(i), k, horizon);
    for (unsigned j = 1; j <= D && static_cast<long>(j) * vd <= horizon; ++j) {
      Vec next(len, 0);
      mul_acc(*F, next, u_pow.back(), u);
      u_pow.push_back(std::move(next));
    }
    std::vector<Vec> out(D + 1, Vec(len, 0));
    for (unsigned w = 0; w <= D; ++w) {
      for (unsigned j = 0; j <= w && j < u_pow.size(); ++j) mul_acc(*F, out[w], E[w - j], u_pow[j]);
    }
    E = std::move(out);
  }
  std::vector<LaurentSeries> slices;
  for (auto& v : E) slices.push_back(series_of(F, std::move(v), horizon));
  return slices;
}

EulerProductCheck euler_product_check(const ZetaTrunc& zeta, const OmegaTable& table) {
  if (zeta.max_degree != table.max_degree() || zeta.field != table.field()) {
    throw UsageError("zeta truncation and Omega table describe different ranges");
  }
  const auto euler = euler_product_slices(table, zeta.k, zeta.horizon);
  EulerProductCheck c;
  for (std::size_t w = 0; w < euler.size(); ++w) {
    for (long j = 0; j <= zeta.horizon; ++j) {
      if (euler[w].coefficient(j) != zeta.slices[w].coefficient(j)) {
        c.agree = false;
        c.omega = static_cast<long>(w);
        c.index = j;
        return c;
      }
    }
  }
  return c;
}

LaurentSeries log_derivative_at_one(const ZetaTrunc& zeta) {
  const FieldPtr& F = zeta.field;
  LaurentSeries value = LaurentSeries::zero(F, zeta.horizon);
  LaurentSeries deriv = LaurentSeries::zero(F, zeta.horizon);
  for (std::size_t w = 0; w < zeta.slices.size(); ++w) {
    value = value + zeta.slices[w];
    const Elem c = F->from_int(static_cast<long>(w % F->p()));
    if (c != 0) deriv = deriv + zeta.slices[w].scaled(c);
  }
  return (deriv * inverse(value)).truncated(zeta.horizon);
}

LogDerivativeCheck log_derivative_check(const ZetaTrunc& zeta, const PartialSumResult& engine) {
  if (engine.spec.kind != SumKind::kPK || engine.spec.effective_k() != zeta.k || engine.spec.d_min != 1 ||
      engine.spec.d_max != zeta.max_degree || engine.spec.field != zeta.field) {
    throw UsageError("engine run does not describe P_{<=D}(k) for the zeta truncation");
  }
  if (engine.horizon != zeta.horizon) {
    throw HorizonError("refusing to compare: oracle horizon " + std::to_string(zeta.horizon) +
                       " differs from engine horizon " + std::to_string(engine.horizon));
  }
  const LaurentSeries L = log_derivative_at_one(zeta);
  const LaurentSeries& P = engine.total();
  LogDerivativeCheck c;
  c.horizon = zeta.horizon;
  const LaurentSeries sum = (L + P).truncated(zeta.horizon);
  c.agreement = sum.valuation("zeta'/zeta + P_{<=" + std::to_string(zeta.max_degree) + "}(" +
                              std::to_string(zeta.k) + ")");
  if (!sum.is_zero_to_horizon() && (L - P).truncated(zeta.horizon).is_zero_to_horizon()) c.sign_discrepancy = true;
  return c;
}

LogDerivativeCheck log_derivative_check(const FieldPtr& field, std::uint64_t k, unsigned max_degree,
                                        const RunOptions& options) {
  const OmegaTable table = omega_sieve(field, max_degree);
  const ZetaTrunc zeta = zeta_truncated(table, k);
  SumSpec spec;
  spec.field = field;
  spec.kind = SumKind::kPK;
  spec.k = k;
  spec.d_min = 1;
  spec.d_max = max_degree;
  spec.horizon = zeta.horizon;
  return log_derivative_check(zeta, accumulate(spec, options));
}

}  // namespace primesym
