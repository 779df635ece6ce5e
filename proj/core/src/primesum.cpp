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

#include "primesym/primesum.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "primesym/error.hpp"

namespace primesym {

namespace {

constexpr std::size_t kMaxChunks = 64;
constexpr std::uint64_t kMinChunkSpan = 4096;
constexpr const char* kCacheFormat = "primesym-degree-cache/1";

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

std::string context_of(const SumSpec& spec, const std::string& scope) {
  std::ostringstream os;
  os << "q=" << spec.field->q() << " kind=" << to_string(spec.kind) << " k=" << spec.effective_k()
     << " " << scope;
  return os.str();
}

// Chunk count depends only on the encoding range, never on the worker count,
// so every run reduces the same partial sums in the same tree.
std::size_t chunk_count(std::uint64_t span) {
  const std::uint64_t by_span = std::max<std::uint64_t>(1, span / kMinChunkSpan);
  return static_cast<std::size_t>(std::min<std::uint64_t>(kMaxChunks, by_span));
}

void add_into(const FieldSpec& F, std::vector<Elem>& dst, const std::vector<Elem>& src) {
  if (F.char2()) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
  } else {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = F.add(dst[i], src[i]);
  }
}

struct ChunkSum {
  std::vector<Elem> acc;
  std::vector<std::uint64_t> ones;
  std::uint64_t primes = 0;
};

long term_denominator_degree(SumKind kind, std::uint64_t k, unsigned d, unsigned p) {
  switch (kind) {
    case SumKind::kConjA: return static_cast<long>(d);
    case SumKind::kPK: return static_cast<long>(k * d);
    case SumKind::kGP: return static_cast<long>(p * k * d);
    case SumKind::kPower: break;
  }
  throw UsageError("POWER sums have no denominators");
}

Rational term_rational(const Poly& P, SumKind kind, std::uint64_t k) {
  const FieldPtr& F = P.field();
  const Poly one = Poly::constant(F, 1);
  if (kind == SumKind::kConjA) return Rational(one, P + one);
  const Poly Pk = pow(P, k);
  if (kind == SumKind::kPK) return Rational(-one, Pk - one);
  if (kind == SumKind::kGP) {
    const auto N = gp_numerator(F->p());
    Poly num(F);
    Poly power = one;
    for (unsigned i = F->p(); i >= 1; --i) {
      if (N[i] != 0) num += power.scaled(F->from_int(N[i]));
      if (i > 1) power = power * Pk;
    }
    return Rational(num, power * Pk - one);
  }
  throw UsageError("POWER sums have no rational terms");
}

}  // namespace

std::uint64_t SumSpec::effective_k() const { return kind == SumKind::kConjA ? 1 : k; }

long SumSpec::auto_horizon() const {
  return static_cast<long>(effective_k() * (d_max + 1)) - 1;
}

long SumSpec::compute_horizon() const { return horizon ? *horizon : auto_horizon(); }

long SumSpec::final_horizon() const { return std::min(compute_horizon(), auto_horizon()); }

bool SumSpec::qm1_divides_k() const { return effective_k() % (field->q() - 1) == 0; }

void SumSpec::validate() const {
  if (!field) throw UsageError("sum spec without a field");
  if (kind == SumKind::kPower) throw UsageError("POWER sums are polynomial valued; use power_sum_primes");
  if (effective_k() == 0) throw UsageError("k must be positive");
  if (d_min < 1 || d_min > d_max) {
    throw UsageError("degree range [" + std::to_string(d_min) + ", " + std::to_string(d_max) + "] is empty");
  }
  if (horizon && *horizon < 0) throw UsageError("horizon must be non-negative");
}

nlohmann::json SumSpec::to_json() const {
  nlohmann::json j{{"field", field->name()},
                   {"kind", to_string(kind)},
                   {"k", effective_k()},
                   {"d_min", d_min},
                   {"d_max", d_max},
                   {"horizon", compute_horizon()},
                   {"final_horizon", final_horizon()}};
  j["horizon_mode"] = horizon ? "explicit" : "auto";
  return j;
}

nlohmann::json DegreeFlags::to_json() const {
  auto opt = [](const std::optional<bool>& b) -> nlohmann::json {
    return b ? nlohmann::json(*b) : nlohmann::json(nullptr);
  };
  return nlohmann::json{{"qm1_applicable", qm1_applicable},
                        {"div_q_qm1", opt(div_q_qm1)},
                        {"ge_kd", opt(ge_kd)},
                        {"eq_kd", opt(eq_kd)},
                        {"has_dk_plus_1", opt(has_dk_plus_1)}};
}

DegreeFlags compute_flags(const SumSpec& spec, unsigned d, const LaurentSeries& series) {
  DegreeFlags f;
  const std::uint64_t q = spec.field->q();
  const long kd = static_cast<long>(spec.effective_k() * d);
  const bool summand_is_pk = spec.kind == SumKind::kPK || (q == 2 && spec.kind != SumKind::kPower);
  f.qm1_applicable = summand_is_pk && spec.qm1_divides_k();
  const long h = series.horizon();
  const ValuationReport v = series.valuation();
  if (v.exact()) {
    f.ge_kd = v.value >= kd;
    f.eq_kd = v.value == kd;
    if (f.qm1_applicable) f.div_q_qm1 = v.value % static_cast<long>(q * (q - 1)) == 0;
  } else {
    if (v.value >= kd) f.ge_kd = true;
    if (h >= kd) f.eq_kd = false;
  }
  if (h >= kd + 1) f.has_dk_plus_1 = series.coefficient(kd + 1) != 0;
  return f;
}

const DegreeResult& PartialSumResult::degree(unsigned d) const {
  for (const auto& r : degrees) {
    if (r.d == d) return r;
  }
  throw UsageError("degree " + std::to_string(d) + " is outside the computed range");
}

const LaurentSeries& PartialSumResult::cumulative_through(unsigned d) const {
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i].d == d) return cumulative[i];
  }
  throw UsageError("degree " + std::to_string(d) + " is outside the computed range");
}

NormalizedK normalize_k(unsigned p, std::uint64_t k) {
  if (k == 0) throw UsageError("k must be positive");
  NormalizedK n{k, 0};
  while (n.k0 % p == 0) {
    n.k0 /= p;
    ++n.e;
  }
  return n;
}

DegreeResult sum_over_degree(const SumSpec& spec, unsigned d, const RunOptions& options) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const FieldSpec& F = *spec.field;
  const long H = spec.compute_horizon();
  const std::uint64_t k = spec.effective_k();
  const NormalizedK nk = spec.kind == SumKind::kConjA ? NormalizedK{1, 0} : normalize_k(F.p(), k);
  const std::uint64_t pe = ipow(F.p(), nk.e);
  const long H0 = (H + 1 + static_cast<long>(pe) - 1) / static_cast<long>(pe) - 1;

  DegreeResult r;
  r.d = d;
  const bool count_ones = spec.kind == SumKind::kConjA && F.q() == 2;

  if (H < static_cast<long>(k * d)) {
    r.noop = true;
    r.series = LaurentSeries::zero(spec.field, H);
    r.primes = count_irreducibles(F.q(), d);
    r.strategy = "none";
    if (count_ones) r.one_counts.assign(static_cast<std::size_t>(H + 1), 0);
    if (options.progress) {
      options.progress("degree " + std::to_string(d) + ": no-op, valuation " + std::to_string(k * d) +
                       " exceeds horizon " + std::to_string(H));
    }
  } else {
    const std::uint64_t span = tail_space(F.q(), d);
    if (span > options.max_candidates) {
      throw BudgetExceeded("degree " + std::to_string(d) + " over F_" + std::to_string(F.q()) + " has " +
                           std::to_string(span) + " candidates, above the budget of " +
                           std::to_string(options.max_candidates));
    }
    const PrimeStream stream(spec.field, d, spec.enum_mode);
    const TermEvaluator ev(spec.field, spec.kind, nk.k0, d, H0, spec.strategy);
    r.strategy = to_string(ev.strategy());
    const std::vector<PrimeStream> parts = stream.split(chunk_count(span));
    std::vector<ChunkSum> sums(parts.size());
    std::atomic<std::size_t> next{0};
    const std::size_t n_acc = static_cast<std::size_t>(H0 + 1);

    auto work = [&]() {
      for (std::size_t idx = next++; idx < parts.size(); idx = next++) {
        ChunkSum& cs = sums[idx];
        cs.acc.assign(n_acc, 0);
        if (count_ones) cs.ones.assign(n_acc, 0);
        PrimeStream part = parts[idx];
        cs.primes = part.for_each([&](const std::vector<Elem>& prime) {
          const kernels::Dense term = ev.term(prime);
          kernels::accumulate(F, cs.acc, term);
          if (count_ones) {
            for (std::size_t i = 0; i < term.c.size(); ++i) {
              if (term.c[i] == 1) ++cs.ones[static_cast<std::size_t>(term.first) + i];
            }
          }
        });
      }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(parts.size())));
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }

    // Balanced binary reduction over the fixed chunk order.
    for (std::size_t width = 1; width < sums.size(); width *= 2) {
      for (std::size_t i = 0; i + width < sums.size(); i += 2 * width) {
        add_into(F, sums[i].acc, sums[i + width].acc);
        for (std::size_t j = 0; j < sums[i].ones.size(); ++j) sums[i].ones[j] += sums[i + width].ones[j];
        sums[i].primes += sums[i + width].primes;
        std::vector<Elem>().swap(sums[i + width].acc);
      }
    }
    r.primes = sums[0].primes;
    LaurentSeries s0 = LaurentSeries::from_dense(spec.field, 0, std::move(sums[0].acc), H0);
    r.series = nk.e == 0 ? std::move(s0) : s0.frobenius_power(nk.e).truncated(H);
    r.one_counts = std::move(sums[0].ones);
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.valuation = r.series.valuation(context_of(spec, "degree " + std::to_string(d)));
  r.flags = compute_flags(spec, d, r.series);
  if (options.progress && !r.noop) {
    std::ostringstream os;
    os << "degree " << d << ": " << r.primes << " primes, " << r.strategy << ", p_d " << r.valuation.to_string()
       << ", " << static_cast<long long>(r.runtime_ms) << " ms";
    options.progress(os.str());
  }
  return r;
}

PartialSumResult accumulate(const SumSpec& spec, const RunOptions& options) {
  spec.validate();
  PartialSumResult out;
  out.spec = spec;
  out.horizon = spec.compute_horizon();
  std::optional<DegreeCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir);

  for (unsigned d = spec.d_min; d <= spec.d_max; ++d) {
    std::optional<DegreeResult> r;
    if (cache) r = cache->load(spec, d, out.horizon);
    if (r) {
      r->from_cache = true;
      r->valuation = r->series.valuation(context_of(spec, "degree " + std::to_string(d)));
      r->flags = compute_flags(spec, d, r->series);
      if (options.progress) options.progress("degree " + std::to_string(d) + ": served from cache");
    } else {
      r = sum_over_degree(spec, d, options);
      if (cache) cache->store(spec, *r);
    }
    LaurentSeries cum = out.cumulative.empty() ? r->series : out.cumulative.back() + r->series;
    out.cumulative_valuations.push_back(cum.valuation(context_of(spec, "degrees <= " + std::to_string(d))));
    out.cumulative.push_back(std::move(cum));
    out.degrees.push_back(std::move(*r));
  }
  return out;
}

PartialSumResult g_term_sum(SumSpec spec, const RunOptions& options) {
  spec.kind = SumKind::kGP;
  return accumulate(spec, options);
}

ValuationReport valuation_of(const PartialSumResult& result, Scope scope, unsigned d) {
  switch (scope) {
    case Scope::kDegree: return result.degree(d).valuation;
    case Scope::kCumulative: {
      for (std::size_t i = 0; i < result.degrees.size(); ++i) {
        if (result.degrees[i].d == d) return result.cumulative_valuations[i];
      }
      throw UsageError("degree " + std::to_string(d) + " is outside the computed range");
    }
    case Scope::kFull: break;
  }
  if (result.spec.d_min != 1) throw UsageError("the full sum needs every degree from 1");
  const long fh = result.spec.final_horizon();
  const LaurentSeries& total = result.total();
  const std::string ctx = context_of(result.spec, "full sum");
  if (!total.is_zero_to_horizon() && total.first_index() <= fh) {
    return ValuationReport::exact_at(total.first_index(), total.coeffs().front(), ctx);
  }
  return ValuationReport::at_least(fh + 1, ctx);
}

std::vector<ParityCheck> conj_a_parity_counts(const PartialSumResult& result) {
  const SumSpec& spec = result.spec;
  if (spec.kind != SumKind::kConjA || spec.field->q() != 2) {
    throw UsageError("the parity form applies to CONJ_A over F_2");
  }
  if (spec.d_min != 1) throw UsageError("the parity form needs every degree from 1");
  std::vector<ParityCheck> out;
  const long last = std::min<long>(spec.d_max, result.horizon);
  for (long j = 1; j <= last; ++j) {
    ParityCheck c;
    c.index = j;
    for (const auto& r : result.degrees) {
      if (static_cast<long>(r.d) > j) break;
      if (static_cast<std::size_t>(j) < r.one_counts.size()) c.count += r.one_counts[static_cast<std::size_t>(j)];
    }
    c.coefficient = result.total().coefficient(j);
    c.consistent = (c.count % 2) == c.coefficient;
    out.push_back(c);
  }
  return out;
}

Poly power_sum_primes(const FieldPtr& field, unsigned d, std::uint64_t k) {
  if (k * d > (std::uint64_t{1} << 22)) throw BudgetExceeded("k d too large for an exact power sum");
  Poly total(field);
  PrimeStream stream(field, d);
  stream.for_each([&](const std::vector<Elem>& c) { total += pow(Poly(field, c), k); });
  return total;
}

Rational exact_degree_sum(const FieldPtr& field, SumKind kind, std::uint64_t k, unsigned d, long max_den_degree) {
  if (kind == SumKind::kConjA) k = 1;
  std::vector<Rational> level;
  for (const Poly& P : primes_of_degree(field, d)) level.push_back(term_rational(P, kind, k));
  if (level.empty()) return Rational(field);
  // Pairwise reduction keeps operands of similar size.
  while (level.size() > 1) {
    std::vector<Rational> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(level[i] + level[i + 1]);
      if (next.back().den().degree() > max_den_degree) {
        throw BudgetExceeded("exact sum denominator exceeds degree " + std::to_string(max_den_degree));
      }
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

ExactnessCertificate certify_exact(const FieldPtr& field, SumKind kind, std::uint64_t k, unsigned d_lo,
                                   unsigned d_hi, const RunOptions& options) {
  SumSpec spec;
  spec.field = field;
  spec.kind = kind;
  spec.k = k;
  spec.d_min = d_lo;
  spec.d_max = d_hi;
  long bound = 0;
  for (unsigned d = d_lo; d <= d_hi; ++d) {
    bound += static_cast<long>(count_irreducibles(field->q(), d)) *
             term_denominator_degree(kind, spec.effective_k(), d, field->p());
  }
  spec.horizon = bound;
  const PartialSumResult r = accumulate(spec, options);
  ExactnessCertificate c;
  c.bound = bound;
  c.valuation = r.total().valuation(context_of(spec, "exactness certificate"));
  c.zero = r.total().is_zero_to_horizon();
  return c;
}

C4Predicate vanishing_predicate_C4(const FieldPtr& field, std::uint64_t k) {
  if (field->p() != 2) throw UsageError("the p_1(k) >= 2k criterion is stated for q = 2^m");
  if (k % (field->q() - 1) != 0) throw UsageError("the p_1(k) >= 2k criterion needs (q - 1) | k");
  SumSpec spec;
  spec.field = field;
  spec.kind = SumKind::kPK;
  spec.k = k;
  spec.d_min = spec.d_max = 1;
  spec.horizon = static_cast<long>(3 * k + 2 * field->q());
  const DegreeResult r = sum_over_degree(spec, 1);
  C4Predicate out;
  out.p1 = r.valuation;
  out.predicate = out.p1.value >= static_cast<long>(2 * k);
  return out;
}

DegreeCache::DegreeCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path DegreeCache::path_for(const SumSpec& spec, unsigned d) const {
  const FieldSpec& F = *spec.field;
  std::ostringstream os;
  os << to_string(spec.kind) << "_p" << F.p() << "m" << F.m() << "_k" << spec.effective_k() << "_d" << d
     << ".json";
  return dir_ / os.str();
}

std::optional<DegreeResult> DegreeCache::load(const SumSpec& spec, unsigned d, long horizon) const {
  const auto path = path_for(spec, d);
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CacheMismatch("unreadable cache entry " + path.string() + ": " + e.what());
  }
  if (j.value("format", "") != kCacheFormat) throw CacheMismatch("unknown cache format in " + path.string());
  const std::string field = j.at("field").get<std::string>();
  if (field != spec.field->name()) {
    throw CacheMismatch("cache entry " + path.string() + " was computed over " + field + " but this run uses " +
                        spec.field->name());
  }
  if (j.at("kind").get<std::string>() != to_string(spec.kind) || j.at("k").get<std::uint64_t>() != spec.effective_k() ||
      j.at("d").get<unsigned>() != d) {
    throw CacheMismatch("cache entry " + path.string() + " does not match (kind, k, d)");
  }
  if (j.at("horizon").get<long>() < horizon) return std::nullopt;
  DegreeResult r;
  r.d = d;
  r.series = LaurentSeries::from_json(j.at("series")).truncated(horizon);
  r.primes = j.at("primes").get<std::uint64_t>();
  r.runtime_ms = j.value("runtime_ms", 0.0);
  r.noop = j.value("noop", false) || horizon < static_cast<long>(spec.effective_k() * d);
  r.strategy = j.value("strategy", "");
  if (j.contains("one_counts")) {
    r.one_counts = j.at("one_counts").get<std::vector<std::uint64_t>>();
    r.one_counts.resize(static_cast<std::size_t>(horizon + 1));
  }
  return r;
}

void DegreeCache::store(const SumSpec& spec, const DegreeResult& r) const {
  nlohmann::json j{{"format", kCacheFormat},
                   {"field", spec.field->name()},
                   {"kind", to_string(spec.kind)},
                   {"k", spec.effective_k()},
                   {"d", r.d},
                   {"horizon", r.series.horizon()},
                   {"primes", r.primes},
                   {"noop", r.noop},
                   {"strategy", r.strategy},
                   {"runtime_ms", r.runtime_ms},
                   {"series", r.series.to_json()}};
  if (!r.one_counts.empty()) j["one_counts"] = r.one_counts;
  const auto path = path_for(spec, r.d);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
    if (!out) throw Error("failed to write cache entry " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace primesym
