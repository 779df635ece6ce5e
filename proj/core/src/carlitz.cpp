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

#include "primesym/carlitz.hpp"

#include <string>

#include "primesym/error.hpp"

namespace primesym {

namespace {

void require_q2(const CarlitzSeq& seq, const char* what) {
  if (seq.field()->q() != 2) throw UsageError(std::string(what) + " is stated for q = 2");
}

Rational one(const FieldPtr& F) { return Rational(Poly::constant(F, 1)); }

}  // namespace

CarlitzSeq::CarlitzSeq(FieldPtr field, unsigned max_n) : field_(std::move(field)), max_n_(max_n) {
  d_.push_back(Poly::constant(field_, 1));
  l_.push_back(Poly::constant(field_, 1));
}

void CarlitzSeq::extend(unsigned n) const {
  if (n > max_n_) {
    throw BudgetExceeded("Carlitz index " + std::to_string(n) + " exceeds the budget " + std::to_string(max_n_));
  }
  std::lock_guard<std::mutex> lock(mu_);
  while (d_.size() <= n) {
    const unsigned i = static_cast<unsigned>(d_.size());
    const Poly b = bracket(field_, i);
    d_.push_back(b * pow(d_[i - 1], field_->q()));
    l_.push_back(b * l_.back());
  }
}

const Poly& CarlitzSeq::D(unsigned n) const {
  extend(n);
  std::lock_guard<std::mutex> lock(mu_);
  return d_[n];
}

const Poly& CarlitzSeq::L(unsigned n) const {
  extend(n);
  std::lock_guard<std::mutex> lock(mu_);
  return l_[n];
}

std::pair<Poly, Poly> carlitz_A(const CarlitzSeq& seq, unsigned n) {
  require_q2(seq, "A_n");
  if (n < 2) throw UsageError("A_n needs n >= 2");
  const FieldPtr& F = seq.field();
  return {bracket(F, n - 1), seq.L(n) * pow(bracket(F, 1), std::uint64_t{1} << (n - 1))};
}

Rational carlitz_A_value(const CarlitzSeq& seq, unsigned n) {
  auto [num, den] = carlitz_A(seq, n);
  return Rational(std::move(num), std::move(den));
}

Rational exp_log_coefficient(const CarlitzSeq& seq, unsigned n) {
  const FieldPtr& F = seq.field();
  Rational total(F);
  std::uint64_t qk = 1;
  for (unsigned k = 0; k <= n; ++k) {
    Rational term(Poly::constant(F, 1), pow(seq.D(n - k), qk) * seq.L(k));
    if (k % 2 == 1) term = -term;
    total += term;
    qk *= F->q();
  }
  return total;
}

ExpLogCheck exp_log_identity_check(const CarlitzSeq& seq, unsigned n) {
  if (n < 1) throw UsageError("the identity concerns z^{q^n} with n >= 1");
  ExpLogCheck c;
  c.n = n;
  c.extension = seq.field()->q() != 2;
  c.holds = exp_log_coefficient(seq, n).is_zero();
  return c;
}

Rational telescoping_left(const CarlitzSeq& seq, unsigned k) {
  require_q2(seq, "the telescoping step");
  const FieldPtr& F = seq.field();
  return one(F) / Rational(seq.L(k + 1)) +
         one(F) / Rational(seq.L(k) * pow(bracket(F, 1), std::uint64_t{1} << k));
}

bool telescoping_lemma_check(const CarlitzSeq& seq, unsigned k) {
  const FieldPtr& F = seq.field();
  const Rational rhs(bracket(F, k), seq.L(k + 1) * pow(bracket(F, 1), std::uint64_t{1} << (k + 1)));
  return telescoping_left(seq, k) == rhs;
}

bool telescoping_lemma_corrected_check(const CarlitzSeq& seq, unsigned k) {
  const FieldPtr& F = seq.field();
  const Rational rhs(bracket(F, k), seq.L(k + 1) * pow(bracket(F, 1), std::uint64_t{1} << k));
  return telescoping_left(seq, k) == rhs;
}

}  // namespace primesym
