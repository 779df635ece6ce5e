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

#include "primesym/kernels.hpp"

#include <algorithm>
#include <utility>

#include "primesym/error.hpp"

namespace primesym::kernels {

Dense Dense::one(long horizon) {
  Dense d{0, horizon, {}};
  if (horizon >= 0) {
    d.c.assign(static_cast<std::size_t>(horizon + 1), 0);
    d.c[0] = 1;
  }
  return d;
}

Dense divide(const FieldSpec& F, const Dense& x, bool x_exact, const std::vector<Elem>& f,
             long out_horizon) {
  if (f.empty() || f.back() == 0) throw DivisionByZero("division by a zero polynomial");
  const long D = static_cast<long>(f.size()) - 1;
  if (!x_exact && out_horizon > x.horizon + D) {
    throw HorizonError("dividend known through " + std::to_string(x.horizon) +
                       " cannot give quotient through " + std::to_string(out_horizon));
  }
  const long first = x.first + D;
  Dense y{first, out_horizon, {}};
  if (out_horizon < first) return y;
  const std::size_t n_out = static_cast<std::size_t>(out_horizon - first + 1);
  y.c.assign(n_out, 0);

  // Nonzero subleading coefficients as (shift i, f_{D-i}) pairs, negated so
  // the inner loop is a plain multiply-add.
  std::vector<std::pair<std::size_t, Elem>> taps;
  for (long i = 1; i <= D; ++i) {
    const Elem c = f[static_cast<std::size_t>(D - i)];
    if (c != 0) taps.emplace_back(static_cast<std::size_t>(i), F.neg(c));
  }
  const Elem inv_lead = F.inv(f.back());
  const std::size_t n_x = x.c.size();
  Elem* out = y.c.data();

  if (F.char2()) {
    // Characteristic 2: addition is XOR and negation is the identity.
    for (std::size_t n = 0; n < n_out; ++n) {
      Elem acc = n < n_x ? x.c[n] : Elem{0};
      for (const auto& [i, c] : taps) {
        if (i > n) break;
        const Elem yv = out[n - i];
        if (yv != 0) acc ^= F.mul(c, yv);
      }
      out[n] = inv_lead == 1 ? acc : F.mul(acc, inv_lead);
    }
  } else {
    for (std::size_t n = 0; n < n_out; ++n) {
      Elem acc = n < n_x ? x.c[n] : Elem{0};
      for (const auto& [i, c] : taps) {
        if (i > n) break;
        const Elem yv = out[n - i];
        if (yv != 0) acc = F.add(acc, F.mul(c, yv));
      }
      out[n] = inv_lead == 1 ? acc : F.mul(acc, inv_lead);
    }
  }
  return y;
}

Dense frobenius_spread(const FieldSpec& F, const Dense& z, unsigned s, long out_horizon) {
  long stride = 1;
  for (unsigned i = 0; i < s; ++i) stride *= static_cast<long>(F.p());
  const long limit = std::min(out_horizon, stride * (z.horizon + 1) - 1);
  Dense y{z.first * stride, limit, {}};
  if (limit < y.first) return y;
  y.c.assign(static_cast<std::size_t>(limit - y.first + 1), 0);
  const bool prime_field = F.m() == 1 || s % F.m() == 0;
  for (std::size_t i = 0; i < z.c.size(); ++i) {
    const long pos = static_cast<long>(i) * stride;
    if (pos > limit - y.first) break;
    const Elem c = z.c[i];
    if (c == 0) continue;
    y.c[static_cast<std::size_t>(pos)] = prime_field ? c : F.frobenius(c, s);
  }
  return y;
}

Dense neg_power(const FieldSpec& F, const std::vector<Elem>& f, std::uint64_t K, long horizon) {
  const long d = static_cast<long>(f.size()) - 1;
  if (K == 0) return Dense::one(horizon);
  const long vmin = static_cast<long>(K) * d;
  if (horizon < vmin) return Dense::zero(vmin, horizon);
  if (d == 0) throw UsageError("neg_power needs a nonconstant polynomial");
  const std::uint64_t p = F.p();
  const long a = static_cast<long>(K % p);
  const std::uint64_t Kp = K / p;
  Dense x;
  if (Kp == 0) {
    x = Dense::one(horizon - a * d);
  } else {
    const long inner = (horizon - a * d) / static_cast<long>(p);
    x = frobenius_spread(F, neg_power(F, f, Kp, inner), 1, horizon - a * d);
  }
  for (long i = 0; i < a; ++i) x = divide(F, x, Kp == 0 && i == 0, f, x.horizon + d);
  return x;
}

double neg_power_cost(unsigned p, std::size_t f_nonzeros, unsigned degree, std::uint64_t K,
                      long horizon) {
  double cost = 0;
  long h = horizon;
  while (K > 0 && h >= static_cast<long>(K * degree)) {
    const std::uint64_t a = K % p;
    const double len = static_cast<double>(h - static_cast<long>(K * degree) + 1);
    cost += static_cast<double>(a) * static_cast<double>(f_nonzeros) * len + len;
    h = (h - static_cast<long>(a * degree)) / static_cast<long>(p);
    K /= p;
  }
  return cost;
}

void accumulate(const FieldSpec& F, std::vector<Elem>& acc, const Dense& x, Elem scale) {
  if (x.c.empty()) return;
  if (x.first < 0) throw HorizonError("accumulator starts at index 0");
  const std::size_t base = static_cast<std::size_t>(x.first);
  const std::size_t n = std::min(x.c.size(), acc.size() > base ? acc.size() - base : 0);
  Elem* dst = acc.data() + base;
  if (F.char2() && scale == 1) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= x.c[i];
  } else if (scale == 1) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = F.add(dst[i], x.c[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (x.c[i] != 0) dst[i] = F.add(dst[i], F.mul(scale, x.c[i]));
    }
  }
}

}  // namespace primesym::kernels
