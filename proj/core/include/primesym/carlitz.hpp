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
#include <mutex>
#include <utility>
#include <deque>

#include "primesym/poly.hpp"
#include "primesym/rational.hpp"

namespace primesym {

/// Carlitz factorials over F_q[t]: D_0 = L_0 = 1, D_n = [n] D_{n-1}^q and
/// L_n = [n] L_{n-1}.  Values are memoized and safe to read concurrently.
class CarlitzSeq {
 public:
  explicit CarlitzSeq(FieldPtr field, unsigned max_n = 12);

  const FieldPtr& field() const { return field_; }
  unsigned max_n() const { return max_n_; }

  const Poly& D(unsigned n) const;
  const Poly& L(unsigned n) const;

 private:
  void extend(unsigned n) const;

  FieldPtr field_;
  unsigned max_n_;
  mutable std::mutex mu_;
  mutable std::deque<Poly> d_;
  mutable std::deque<Poly> l_;
};

/// The pair ([n-1], L_n [1]^{2^{n-1}}), returned unreduced.  q = 2, n >= 2.
std::pair<Poly, Poly> carlitz_A(const CarlitzSeq& seq, unsigned n);

/// carlitz_A as a reduced rational function.
Rational carlitz_A_value(const CarlitzSeq& seq, unsigned n);

/// Coefficient of z^{q^n} in log_C(exp_C(z)) - z:
/// sum_{k=0}^{n} (-1)^k / (D_{n-k}^{q^k} L_k).  In characteristic 2 the signs
/// disappear.
Rational exp_log_coefficient(const CarlitzSeq& seq, unsigned n);

struct ExpLogCheck {
  unsigned n = 0;
  bool holds = false;
  /// True when q != 2: the signed form is a generalization of the q = 2 form.
  bool extension = false;
};

ExpLogCheck exp_log_identity_check(const CarlitzSeq& seq, unsigned n);

/// The displayed two-term step exactly as printed:
/// 1/L_{k+1} + 1/(L_k [1]^{2^k}) == [k] / (L_{k+1} [1]^{2^{k+1}}).
bool telescoping_lemma_check(const CarlitzSeq& seq, unsigned k);

/// The same step with the right side [k] / (L_{k+1} [1]^{2^k}), which is what
/// [1]^{2^k} + [k+1] = [k] over F_2 gives.
bool telescoping_lemma_corrected_check(const CarlitzSeq& seq, unsigned k);

/// Left side 1/L_{k+1} + 1/(L_k [1]^{2^k}) of the telescoping step.
Rational telescoping_left(const CarlitzSeq& seq, unsigned k);

}  // namespace primesym
