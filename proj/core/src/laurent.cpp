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

#include "primesym/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "primesym/error.hpp"
#include "primesym/kernels.hpp"

namespace primesym {

namespace {

void check_same_field(const LaurentSeries& a, const LaurentSeries& b) {
  if (!a.field()->same_as(*b.field())) {
    throw FieldMismatch("series over " + a.field()->name() + " and " + b.field()->name());
  }
}

kernels::Dense as_dense(const LaurentSeries& a) {
  return kernels::Dense{a.first_index(), a.horizon(), a.coeffs()};
}

LaurentSeries from_kernel(const FieldPtr& field, kernels::Dense d) {
  return LaurentSeries::from_dense(field, d.first, std::move(d.c), d.horizon);
}

// The polynomial f as a dense buffer, exact beyond index 0.
kernels::Dense poly_as_dense(const Poly& f) {
  kernels::Dense d{-f.degree(), 0, {}};
  d.c.assign(f.coeffs().rbegin(), f.coeffs().rend());
  return d;
}

// Truncated power-series product in x = 1/t, first n terms.
std::vector<Elem> mul_trunc(const FieldSpec& F, const std::vector<Elem>& a,
                            const std::vector<Elem>& b, std::size_t n) {
  std::vector<Elem> out(n, 0);
  for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
    if (a[i] == 0) continue;
    const std::size_t lim = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j) {
      if (b[j] != 0) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
  }
  return out;
}

}  // namespace

ValuationReport ValuationReport::exact_at(long value, Elem witness, std::string context) {
  ValuationReport r;
  r.kind = Kind::kExact;
  r.value = value;
  r.witness = witness;
  r.context = std::move(context);
  return r;
}

ValuationReport ValuationReport::at_least(long value, std::string context) {
  ValuationReport r;
  r.kind = Kind::kLowerBound;
  r.value = value;
  r.context = std::move(context);
  return r;
}

std::string ValuationReport::to_string() const {
  std::string s = exact() ? "= " + std::to_string(value) : ">= " + std::to_string(value);
  if (witness) s += " (coeff " + std::to_string(*witness) + ")";
  return s;
}

nlohmann::json ValuationReport::to_json() const {
  nlohmann::json j{{"exact", exact()}, {"value", value}};
  if (witness) j["witness"] = *witness;
  if (!context.empty()) j["context"] = context;
  return j;
}

LaurentSeries LaurentSeries::zero(FieldPtr field, long horizon) {
  return LaurentSeries(std::move(field), horizon);
}

LaurentSeries LaurentSeries::from_poly(const Poly& f, long horizon) {
  if (f.is_zero()) return zero(f.field(), horizon);
  kernels::Dense d = poly_as_dense(f);
  return from_dense(f.field(), d.first, std::move(d.c), horizon);
}

LaurentSeries LaurentSeries::from_dense(FieldPtr field, long first, std::vector<Elem> coeffs,
                                        long horizon) {
  LaurentSeries s(std::move(field), horizon);
  if (first > horizon) return s;
  const std::size_t keep = static_cast<std::size_t>(horizon - first + 1);
  if (coeffs.size() > keep) coeffs.resize(keep);
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
  if (lead == coeffs.size()) return s;
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  s.first_ = first + static_cast<long>(lead);
  coeffs.resize(static_cast<std::size_t>(horizon - s.first_ + 1), 0);
  s.coeffs_ = std::move(coeffs);
  return s;
}

Elem LaurentSeries::coefficient(long j) const {
  if (j > horizon_) {
    throw HorizonError("coefficient of t^-" + std::to_string(j) + " requested beyond horizon " +
                       std::to_string(horizon_));
  }
  if (j < first_) return 0;
  return coeffs_[static_cast<std::size_t>(j - first_)];
}

ValuationReport LaurentSeries::valuation(std::string context) const {
  if (coeffs_.empty()) return ValuationReport::at_least(horizon_ + 1, std::move(context));
  return ValuationReport::exact_at(first_, coeffs_.front(), std::move(context));
}

LaurentSeries LaurentSeries::truncated(long horizon) const {
  if (horizon > horizon_) {
    throw HorizonError("cannot extend a series known through " + std::to_string(horizon_) +
                       " to " + std::to_string(horizon));
  }
  return from_dense(field_, first_, coeffs_, horizon);
}

bool LaurentSeries::agrees_with(const LaurentSeries& other, long through) const {
  check_same_field(*this, other);
  if (through > horizon_ || through > other.horizon_) {
    throw HorizonError("comparison through " + std::to_string(through) + " exceeds a horizon");
  }
  const long lo = std::min(first_, other.first_);
  for (long j = lo; j <= through; ++j) {
    if (coefficient(j) != other.coefficient(j)) return false;
  }
  return true;
}

bool LaurentSeries::identical(const LaurentSeries& other) const {
  return field_->same_as(*other.field_) && horizon_ == other.horizon_ &&
         first_ == other.first_ && coeffs_ == other.coeffs_;
}

LaurentSeries LaurentSeries::operator-() const { return scaled(field_->neg(1)); }

LaurentSeries LaurentSeries::scaled(Elem c) const {
  std::vector<Elem> out = coeffs_;
  for (Elem& x : out) x = field_->mul(c, x);
  return from_dense(field_, first_, std::move(out), horizon_);
}

LaurentSeries LaurentSeries::frobenius_power(unsigned s) const {
  long stride = 1;
  for (unsigned i = 0; i < s; ++i) stride *= static_cast<long>(field_->p());
  const long h = stride * (horizon_ + 1) - 1;
  if (coeffs_.empty()) return zero(field_, h);
  return from_kernel(field_, kernels::frobenius_spread(*field_, as_dense(*this), s, h));
}

nlohmann::json LaurentSeries::to_json() const {
  return nlohmann::json{{"field", field_->name()},
                        {"horizon", horizon_},
                        {"first_index", first_},
                        {"coeff_codes", coeffs_}};
}

LaurentSeries LaurentSeries::from_json(const nlohmann::json& j) {
  try {
    FieldPtr field = FieldSpec::parse(j.at("field").get<std::string>());
    const long horizon = j.at("horizon").get<long>();
    const long first = j.at("first_index").get<long>();
    std::vector<Elem> coeffs;
    for (const auto& c : j.at("coeff_codes")) {
      const unsigned v = c.get<unsigned>();
      if (v >= field->q()) throw FieldError("coefficient code " + std::to_string(v) + " out of range");
      coeffs.push_back(static_cast<Elem>(v));
    }
    return from_dense(std::move(field), first, std::move(coeffs), horizon);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed series JSON: ") + e.what());
  }
}

std::string LaurentSeries::to_string(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
    if (coeffs_[i] == 0) continue;
    const long j = first_ + static_cast<long>(i);
    if (shown++ > 0) os << " + ";
    if (coeffs_[i] != 1 || j == 0) os << static_cast<unsigned>(coeffs_[i]);
    if (j != 0) os << (coeffs_[i] != 1 ? "*" : "") << "t^" << -j;
  }
  if (shown > 0) os << " + ";
  os << "O(t^" << -(horizon_ + 1) << ")";
  return os.str();
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  check_same_field(a, b);
  const FieldSpec& F = *a.field();
  const long h = std::min(a.horizon(), b.horizon());
  const long lo = std::min(a.first_index(), b.first_index());
  if (lo > h) return LaurentSeries::zero(a.field(), h);
  std::vector<Elem> out(static_cast<std::size_t>(h - lo + 1), 0);
  for (long j = lo; j <= h; ++j) {
    out[static_cast<std::size_t>(j - lo)] = F.add(a.coefficient(j), b.coefficient(j));
  }
  return LaurentSeries::from_dense(a.field(), lo, std::move(out), h);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  check_same_field(a, b);
  const FieldSpec& F = *a.field();
  const long va = a.first_index();
  const long vb = b.first_index();
  const long h = std::min(a.horizon() + vb, b.horizon() + va);
  if (a.is_zero_to_horizon() || b.is_zero_to_horizon()) {
    return LaurentSeries::zero(a.field(), h);
  }
  const long first = va + vb;
  if (first > h) return LaurentSeries::zero(a.field(), h);
  const std::size_t n = static_cast<std::size_t>(h - first + 1);
  return LaurentSeries::from_dense(a.field(), first, mul_trunc(F, a.coeffs(), b.coeffs(), n), h);
}

LaurentSeries mul_poly(const LaurentSeries& a, const Poly& f) {
  if (!a.field()->same_as(*f.field())) throw FieldMismatch("series and polynomial fields differ");
  if (f.is_zero()) throw UsageError("multiplication by the zero polynomial");
  // f is exact, so give it enough horizon that only `a` limits the product.
  const long hf = std::max(0L, a.horizon() - f.degree() - a.first_index());
  return a * LaurentSeries::from_poly(f, hf);
}

LaurentSeries div_poly(const LaurentSeries& a, const Poly& f) {
  if (!a.field()->same_as(*f.field())) throw FieldMismatch("series and polynomial fields differ");
  const long h = a.horizon() + f.degree();
  if (f.is_zero()) throw DivisionByZero("division of a series by the zero polynomial");
  if (a.is_zero_to_horizon()) return LaurentSeries::zero(a.field(), h);
  return from_kernel(a.field(), kernels::divide(*a.field(), as_dense(a), false, f.coeffs(), h));
}

LaurentSeries inverse_schoolbook(const LaurentSeries& a) {
  if (a.is_zero_to_horizon()) throw HorizonError("inverse of a series that is zero to its horizon");
  const FieldSpec& F = *a.field();
  const long v = a.first_index();
  const long h = a.horizon() - 2 * v;
  const std::size_t n = static_cast<std::size_t>(a.horizon() - v + 1);
  const auto& u = a.coeffs();
  const Elem inv0 = F.inv(u[0]);
  std::vector<Elem> g(n, 0);
  g[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Elem acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc = F.add(acc, F.mul(u[i], g[k - i]));
    g[k] = F.mul(F.neg(acc), inv0);
  }
  return LaurentSeries::from_dense(a.field(), -v, std::move(g), h);
}

LaurentSeries inverse(const LaurentSeries& a) {
  if (a.is_zero_to_horizon()) throw HorizonError("inverse of a series that is zero to its horizon");
  const FieldSpec& F = *a.field();
  const long v = a.first_index();
  const long h = a.horizon() - 2 * v;
  const std::size_t n = static_cast<std::size_t>(a.horizon() - v + 1);
  const auto& u = a.coeffs();
  // g <- g + g (1 - u g), doubling the number of correct terms each round.
  std::vector<Elem> g{F.inv(u[0])};
  std::size_t have = 1;
  while (have < n) {
    const std::size_t next = std::min(2 * have, n);
    std::vector<Elem> ug = mul_trunc(F, u, g, next);
    for (Elem& x : ug) x = F.neg(x);
    ug[0] = F.add(ug[0], 1);
    const std::vector<Elem> corr = mul_trunc(F, g, ug, next);
    g.resize(next, 0);
    for (std::size_t i = 0; i < next; ++i) g[i] = F.add(g[i], corr[i]);
    have = next;
  }
  return LaurentSeries::from_dense(a.field(), -v, std::move(g), h);
}

LaurentSeries pow(const LaurentSeries& a, std::uint64_t e) {
  LaurentSeries result = LaurentSeries::from_poly(Poly::constant(a.field(), 1), a.horizon());
  if (e == 0) return result;
  LaurentSeries base = a;
  bool started = false;
  while (e > 0) {
    if (e & 1) {
      result = started ? result * base : base;
      started = true;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

LaurentSeries series_from_rational(const Poly& num, const Poly& den, long horizon) {
  if (!num.field()->same_as(*den.field())) throw FieldMismatch("numerator and denominator fields differ");
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) return LaurentSeries::zero(num.field(), horizon);
  return from_kernel(num.field(),
                     kernels::divide(*num.field(), poly_as_dense(num), true, den.coeffs(), horizon));
}

LaurentSeries series_from_rational(const Rational& f, long horizon) {
  return series_from_rational(f.num(), f.den(), horizon);
}

}  // namespace primesym
