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

// Unnormalized dense coefficient buffers and the inner loops that act on
// them.  LaurentSeries wraps these with horizon bookkeeping; the prime-sum
// engine calls them directly to avoid per-term normalization.

#pragma once

#include <cstdint>
#include <vector>

#include "primesym/field.hpp"

namespace primesym::kernels {

/// c[i] is the coefficient of t^{-(first + i)} for first + i <= horizon.
/// When first > horizon the buffer is empty (zero through the horizon).
struct Dense {
  long first = 0;
  long horizon = -1;
  std::vector<Elem> c;

  Elem at(long j) const {
    return (j < first || j > horizon) ? Elem{0} : c[static_cast<std::size_t>(j - first)];
  }
  static Dense zero(long first, long horizon) { return Dense{first, horizon, {}}; }
  static Dense one(long horizon);
};

/// y = x / f through out_horizon, f given low-to-high with a nonzero leading
/// coefficient.  If `x_exact`, x vanishes beyond x.horizon (a polynomial
/// numerator); otherwise out_horizon must not exceed x.horizon + deg f.
Dense divide(const FieldSpec& field, const Dense& x, bool x_exact, const std::vector<Elem>& f,
             long out_horizon);

/// z(t)^{p^s}: coefficient c_j moves to index j p^s as c_j^{p^s}.
Dense frobenius_spread(const FieldSpec& field, const Dense& z, unsigned s, long out_horizon);

/// f^{-K} through t^{-horizon} for monic f, by Horner over the base-p digits
/// of K: f^{-(pK' + a)} = Frob(f^{-K'}) / f^a.  Each level needs only 1/p of
/// the relative precision of the level above.
Dense neg_power(const FieldSpec& field, const std::vector<Elem>& f, std::uint64_t K, long horizon);

/// Estimated multiply count of `neg_power`.
double neg_power_cost(unsigned p, std::size_t f_nonzeros, unsigned degree, std::uint64_t K,
                      long horizon);

/// acc[j] += scale * x_j for all j in x (acc indexed from 0).
void accumulate(const FieldSpec& field, std::vector<Elem>& acc, const Dense& x, Elem scale = 1);

}  // namespace primesym::kernels
