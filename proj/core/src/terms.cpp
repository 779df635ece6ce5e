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

#include "primesym/terms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "primesym/error.hpp"

namespace primesym {

namespace {

constexpr std::uint64_t kMaxSparseExponent = std::uint64_t{1} << 22;

kernels::Dense poly_dense(const std::vector<Elem>& coeffs) {
  kernels::Dense d{-static_cast<long>(coeffs.size()) + 1, 0, {}};
  d.c.assign(coeffs.rbegin(), coeffs.rend());
  return d;
}

std::uint64_t binomial_mod(unsigned n, unsigned r, unsigned mod_times_p) {
  // Exact binomial for n <= 256 reduced into a modulus large enough that a
  // later division by p stays exact.
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i; j > 0; --j) row[j] = (row[j] + row[j - 1]) % mod_times_p;
  }
  return row[r];
}

}  // namespace

std::string to_string(SumKind kind) {
  switch (kind) {
    case SumKind::kConjA: return "CONJ_A";
    case SumKind::kPK: return "PK";
    case SumKind::kGP: return "GP";
    case SumKind::kPower: return "POWER";
  }
  return "?";
}

SumKind parse_sum_kind(const std::string& s) {
  std::string u;
  for (char c : s) u.push_back(static_cast<char>(c == '-' ? '_' : std::toupper(static_cast<unsigned char>(c))));
  if (u == "CONJ_A" || u == "A") return SumKind::kConjA;
  if (u == "PK") return SumKind::kPK;
  if (u == "GP") return SumKind::kGP;
  if (u == "POWER") return SumKind::kPower;
  throw UsageError("unknown sum kind '" + s + "' (expected CONJ_A, PK, GP or POWER)");
}

std::string to_string(TermStrategy s) {
  switch (s) {
    case TermStrategy::kAuto: return "auto";
    case TermStrategy::kFrobeniusHorner: return "frobenius-horner";
    case TermStrategy::kSparseDenominator: return "sparse-denominator";
    case TermStrategy::kReference: return "reference";
  }
  return "?";
}

std::vector<unsigned> gp_numerator(unsigned p) {
  // Integer coefficient of u^i in (1-u^p) - (1-u)^p is -(-1)^i C(p,i) for
  // 0 < i < p and -1 - (-1)^p for i = p; each is divisible by p.
  const unsigned modulus = p * p;
  std::vector<unsigned> out(p + 1, 0);
  for (unsigned i = 1; i <= p; ++i) {
    long long v;
    if (i < p) {
      const long long b = static_cast<long long>(binomial_mod(p, i, modulus));
      v = (i % 2 == 0) ? -b : b;
    } else {
      v = (p % 2 == 0) ? -2 : 0;
    }
    v %= static_cast<long long>(modulus);
    if (v < 0) v += modulus;
    out[i] = static_cast<unsigned>(v / p) % p;
  }
  return out;
}

TermEvaluator::TermEvaluator(FieldPtr field, SumKind kind, std::uint64_t k, unsigned degree,
                             long horizon, TermStrategy strategy)
    : field_(std::move(field)), kind_(kind), k_(kind == SumKind::kConjA ? 1 : k), degree_(degree),
      horizon_(horizon), strategy_(strategy) {
  if (kind_ == SumKind::kPower) throw UsageError("POWER sums are polynomial valued, not series");
  if (degree_ == 0) throw UsageError("terms need a prime of degree >= 1");
  if (k_ == 0) throw UsageError("k must be positive");
  const unsigned p = field_->p();
  if (kind_ == SumKind::kGP) gp_ = gp_numerator(p);

  const double L = static_cast<double>(std::max<long>(horizon_ - static_cast<long>(k_ * degree_) + 1, 1));
  const double nnz = degree_ + 1;
  const long r = horizon_ / static_cast<long>(k_ * degree_);

  double horner = 0;
  for (long i = 1; i <= r; ++i) horner += kernels::neg_power_cost(p, degree_ + 1, degree_, k_ * i, horizon_) + L;

  double sparse = std::numeric_limits<double>::infinity();
  if (kind_ == SumKind::kPK) {
    std::uint64_t ps = 1;
    unsigned s = 0;
    while (ps < k_) {
      ps *= p;
      ++s;
    }
    if (ps <= kMaxSparseExponent) {
      s_ = s;
      c_ = ps - k_;
      const double cd = static_cast<double>(c_) * degree_;
      sparse = (cd + nnz + 1) * L + cd * cd;
    }
  }
  const double reference = (static_cast<double>(k_) * (kind_ == SumKind::kGP ? p : 1) * degree_ + 1) *
                               (L + static_cast<double>(k_ * degree_)) +
                           static_cast<double>(k_ * degree_) * static_cast<double>(k_ * degree_);

  if (strategy_ == TermStrategy::kAuto) {
    if (kind_ == SumKind::kConjA) {
      strategy_ = TermStrategy::kReference;
    } else if (sparse <= horner) {
      strategy_ = TermStrategy::kSparseDenominator;
    } else {
      strategy_ = TermStrategy::kFrobeniusHorner;
    }
  }
  if (strategy_ == TermStrategy::kSparseDenominator && kind_ != SumKind::kPK) {
    throw UsageError("the sparse-denominator strategy applies to PK terms only");
  }
  if (strategy_ == TermStrategy::kSparseDenominator && !std::isfinite(sparse)) {
    throw BudgetExceeded("sparse-denominator exponent too large for k = " + std::to_string(k_));
  }
  switch (strategy_) {
    case TermStrategy::kReference: cost_ = kind_ == SumKind::kConjA ? nnz * L : reference; break;
    case TermStrategy::kFrobeniusHorner: cost_ = horner; break;
    case TermStrategy::kSparseDenominator: cost_ = sparse; break;
    case TermStrategy::kAuto: break;
  }
}

kernels::Dense TermEvaluator::term(const std::vector<Elem>& prime) const {
  if (prime.size() != degree_ + 1 || prime.back() != 1) {
    throw UsageError("term evaluator expects a monic prime of degree " + std::to_string(degree_));
  }
  if (kind_ != SumKind::kConjA && horizon_ < static_cast<long>(k_ * degree_)) {
    return kernels::Dense::zero(static_cast<long>(k_ * degree_), horizon_);
  }
  switch (strategy_) {
    case TermStrategy::kFrobeniusHorner: return term_horner(prime);
    case TermStrategy::kSparseDenominator: return term_sparse(prime);
    default: return term_reference(prime);
  }
}

void TermEvaluator::accumulate(const std::vector<Elem>& prime, std::vector<Elem>& acc) const {
  kernels::accumulate(*field_, acc, term(prime));
}

kernels::Dense TermEvaluator::term_reference(const std::vector<Elem>& prime) const {
  const FieldSpec& F = *field_;
  if (kind_ == SumKind::kConjA) {
    std::vector<Elem> den = prime;
    den[0] = F.add(den[0], 1);
    kernels::Dense one{0, 0, {1}};
    return kernels::divide(F, one, true, den, horizon_);
  }
  const Poly P(field_, prime);
  const Poly Pk = pow(P, k_);
  const Poly one = Poly::constant(field_, 1);
  if (kind_ == SumKind::kPK) {
    // 1/(1 - P^k) = -1 / (P^k - 1)
    const Poly den = Pk - one;
    return kernels::divide(F, kernels::Dense{0, 0, {F.neg(1)}}, true, den.coeffs(), horizon_);
  }
  // G_p(P^{-k}) = sum_i N_i P^{(p-i)k} / (P^{pk} - 1)
  const unsigned p = F.p();
  Poly num(field_);
  Poly power = one;  // P^{(p-i)k} built from i = p downwards
  for (unsigned i = p; i >= 1; --i) {
    if (gp_[i] != 0) num += power.scaled(F.from_int(gp_[i]));
    if (i > 1) power = power * Pk;
  }
  const Poly den = power * Pk - one;
  if (num.is_zero()) return kernels::Dense::zero(static_cast<long>(k_ * degree_), horizon_);
  return kernels::divide(F, poly_dense(num.coeffs()), true, den.coeffs(), horizon_);
}

kernels::Dense TermEvaluator::term_horner(const std::vector<Elem>& prime) const {
  const FieldSpec& F = *field_;
  const long kd = static_cast<long>(k_ * degree_);
  kernels::Dense out{kd, horizon_, std::vector<Elem>(static_cast<std::size_t>(horizon_ - kd + 1), 0)};
  const long r = horizon_ / kd;
  std::vector<Elem> acc(static_cast<std::size_t>(horizon_ + 1), 0);
  const unsigned p = F.p();
  for (long i = 1; i <= r; ++i) {
    Elem scale;
    if (kind_ == SumKind::kPK) {
      scale = F.neg(1);
    } else {
      const unsigned idx = static_cast<unsigned>((i - 1) % p) + 1;
      if (gp_[idx] == 0) continue;
      scale = F.from_int(gp_[idx]);
    }
    kernels::accumulate(F, acc, kernels::neg_power(F, prime, k_ * static_cast<std::uint64_t>(i), horizon_), scale);
  }
  std::copy(acc.begin() + kd, acc.end(), out.c.begin());
  return out;
}

kernels::Dense TermEvaluator::term_sparse(const std::vector<Elem>& prime) const {
  // 1/(1 - P^k) = P^c / (P^c - P^{p^s}) with P^{p^s} the coefficientwise
  // Frobenius spread of P, so the denominator has few nonzero terms.
  const Poly P(field_, prime);
  const Poly Pc = pow(P, c_);
  const Poly den = Pc - P.frobenius_power(s_);
  return kernels::divide(*field_, poly_dense(Pc.coeffs()), true, den.coeffs(), horizon_);
}

LaurentSeries reciprocal_prime_term(const Poly& prime, std::uint64_t k, SumKind kind, long horizon,
                                    TermStrategy strategy) {
  if (prime.degree() < 1 || !prime.is_monic()) throw UsageError("terms need a monic prime of degree >= 1");
  const TermEvaluator ev(prime.field(), kind, k, static_cast<unsigned>(prime.degree()), horizon, strategy);
  kernels::Dense d = ev.term(prime.coeffs());
  return LaurentSeries::from_dense(prime.field(), d.first, std::move(d.c), d.horizon);
}

}  // namespace primesym
