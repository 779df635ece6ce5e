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

#include "primesym/experiments.hpp"

#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "primesym/error.hpp"

namespace primesym {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("primesym_exp_" + name);
  fs::remove_all(dir);
  return dir;
}

Manifest manifest(unsigned q, Task task, std::vector<std::uint64_t> ks, unsigned d_max) {
  Manifest m;
  m.field = FieldSpec::of_order(q)->name();
  m.task = task;
  m.ks = std::move(ks);
  m.d_max = d_max;
  return m;
}

TEST(Manifest, JsonRoundTripIsLossless) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> fields = {"2^1/2", "2^2/7", "3^2/14", "5^1/5"};
  for (int trial = 0; trial < 50; ++trial) {
    Manifest m;
    m.field = fields[rng() % fields.size()];
    m.task = static_cast<Task>(rng() % 9);
    m.conjecture = std::string(1, static_cast<char>('A' + rng() % 4));
    m.kind = static_cast<SumKind>(rng() % 4);
    m.ks = {rng() % 100 + 1, rng() % 100 + 1};
    m.d_min = static_cast<unsigned>(rng() % 3 + 1);
    m.d_max = m.d_min + static_cast<unsigned>(rng() % 5);
    if (rng() % 2) m.horizon = static_cast<long>(rng() % 500);
    m.workers = static_cast<unsigned>(rng() % 8 + 1);
    if (rng() % 2) m.cache_dir = "/tmp/cache" + std::to_string(trial);
    if (rng() % 2) m.out = "report.json";
    m.format = rng() % 2 ? "json" : "csv";
    m.action = rng() % 2 ? "xn" : "";
    m.n_max = static_cast<unsigned>(rng() % 8 + 1);
    if (rng() % 2) m.input = "series.json";
    if (rng() % 2) m.max_deg = static_cast<long>(rng() % 40);
    EXPECT_EQ(Manifest::from_json(m.to_json()), m);
  }
}

TEST(Manifest, FileRoundTrip) {
  const fs::path dir = scratch_dir("manifest");
  fs::create_directories(dir);
  Manifest m = manifest(4, Task::kScan, {3, 15}, 6);
  m.horizon = 99;
  m.save(dir / "m.json");
  EXPECT_EQ(Manifest::load(dir / "m.json"), m);
}

TEST(Manifest, RejectsUnknownKeysAndBadValues) {
  nlohmann::json j = manifest(2, Task::kSum, {1}, 3).to_json();
  j["colour"] = "blue";
  EXPECT_THROW(Manifest::from_json(j), UsageError);

  Manifest m = manifest(2, Task::kSum, {1}, 3);
  m.format = "xml";
  EXPECT_THROW(m.validate(), UsageError);
  m = manifest(2, Task::kSum, {1}, 3);
  m.d_min = 4;
  EXPECT_THROW(m.validate(), UsageError);
  m = manifest(2, Task::kVerify, {1}, 3);
  m.conjecture = "E";
  EXPECT_THROW(m.validate(), UsageError);
  m = manifest(2, Task::kSum, {1}, 3);
  m.field = "6";
  EXPECT_THROW(m.validate(), FieldError);
}

TEST(Manifest, KListSyntax) {
  EXPECT_EQ(parse_k_list("3,7,15"), (std::vector<std::uint64_t>{3, 7, 15}));
  EXPECT_EQ(parse_k_list("1..4"), (std::vector<std::uint64_t>{1, 2, 3, 4}));
  EXPECT_EQ(parse_k_list("3..15/6, 21"), (std::vector<std::uint64_t>{3, 9, 15, 21}));
  EXPECT_THROW(parse_k_list("5..1"), UsageError);
  EXPECT_THROW(parse_k_list("x"), UsageError);
  EXPECT_THROW(parse_k_list(""), UsageError);
}

TEST(Verify, ConjectureAConsistentWithRecordedBound) {
  Manifest m = manifest(2, Task::kVerify, {1}, 16);
  m.conjecture = "A";
  const auto out = verify_A(m, {});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].status, VerifyStatus::kConsistent);
  EXPECT_EQ(out[0].horizon, 16);
  EXPECT_FALSE(out[0].bound.exact());
  EXPECT_EQ(out[0].bound.value, 17);
  EXPECT_EQ(out[1].status, VerifyStatus::kExactPass);
}

TEST(Verify, ConjectureBSevenAgainstCatalog) {
  Manifest m = manifest(2, Task::kVerify, {7}, 12);
  m.conjecture = "B";
  const auto out = verify_B(m, {}, Catalog::builtin());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].status, VerifyStatus::kConsistent);
  EXPECT_GE(out[0].bound.value, 90);
  EXPECT_TRUE(out[0].detail.contains("candidate"));
  EXPECT_FALSE(out[0].witness_index.has_value());
}

TEST(Verify, HypothesisViolationsAreUsageErrors) {
  Manifest b = manifest(3, Task::kVerify, {2}, 3);
  b.conjecture = "B";
  try {
    verify_B(b, {}, Catalog::builtin());
    FAIL() << "expected a usage error";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("q = 2"), std::string::npos);
  }
  Manifest a = manifest(4, Task::kVerify, {1}, 3);
  EXPECT_THROW(verify_A(a, {}), UsageError);
  Manifest c = manifest(4, Task::kVerify, {5}, 3);
  EXPECT_THROW(verify_C(c, {}, Catalog::builtin()), UsageError);
  Manifest c3 = manifest(3, Task::kVerify, {2}, 3);
  EXPECT_THROW(verify_C(c3, {}, Catalog::builtin()), UsageError);
  Manifest d = manifest(3, Task::kVerify, {3}, 3);
  EXPECT_THROW(verify_D(d, {}, Catalog::builtin()), UsageError);
}

TEST(Verify, ConjectureDFirstCaseConsistent) {
  Manifest m = manifest(3, Task::kVerify, {2}, 10);
  m.conjecture = "D";
  const auto out = verify_D(m, {}, Catalog::builtin());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].conjecture, "D(i)");
  EXPECT_EQ(out[0].status, VerifyStatus::kConsistent);
  EXPECT_EQ(out[0].horizon, 21);
}

TEST(Verify, RefutationCarriesWitness) {
  // A deliberately wrong closed form: P(3) over F_2 is 1/[1]^2, not 1/[1]^3.
  CatalogEntry wrong;
  wrong.qs = {2};
  wrong.k = 3;
  wrong.formula = "1/[1]^3";
  const Catalog bad({wrong});
  Manifest m = manifest(2, Task::kVerify, {3}, 10);
  m.conjecture = "B";
  const auto out = verify_B(m, {}, bad);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].status, VerifyStatus::kRefuted);
  ASSERT_TRUE(out[0].witness_index.has_value());

  // The witness is the first index where the sum and the candidate differ.
  SumSpec spec;
  spec.field = FieldSpec::of_order(2);
  spec.k = 3;
  spec.d_max = 10;
  const PartialSumResult r = accumulate(spec);
  const LaurentSeries cand = series_from_rational(evaluate_formula("1/[1]^3", spec.field), spec.final_horizon());
  const LaurentSeries total = r.total().truncated(spec.final_horizon());
  long first = -1;
  for (long j = 0; j <= spec.final_horizon(); ++j) {
    if (total.coefficient(j) != cand.coefficient(j)) {
      first = j;
      break;
    }
  }
  EXPECT_EQ(*out[0].witness_index, first);
  EXPECT_EQ(*out[0].witness_value, spec.field->sub(total.coefficient(first), cand.coefficient(first)));
  EXPECT_EQ(exit_code_for(combine(out)), kExitRefuted);
}

TEST(Verify, CombineAndExitCodes) {
  auto o = [](VerifyStatus s) {
    VerifyOutcome v;
    v.status = s;
    return v;
  };
  EXPECT_EQ(combine({o(VerifyStatus::kExactPass), o(VerifyStatus::kConsistent)}), VerifyStatus::kConsistent);
  EXPECT_EQ(combine({o(VerifyStatus::kExactPass), o(VerifyStatus::kInconclusive)}), VerifyStatus::kExactPass);
  EXPECT_EQ(combine({o(VerifyStatus::kInconclusive)}), VerifyStatus::kInconclusive);
  EXPECT_EQ(combine({o(VerifyStatus::kConsistent), o(VerifyStatus::kRefuted)}), VerifyStatus::kRefuted);
  EXPECT_EQ(combine({o(VerifyStatus::kConsistent), o(VerifyStatus::kExactFail)}), VerifyStatus::kExactFail);
  EXPECT_EQ(exit_code_for(VerifyStatus::kConsistent), 0);
  EXPECT_EQ(exit_code_for(VerifyStatus::kExactPass), 0);
  EXPECT_EQ(exit_code_for(VerifyStatus::kRefuted), 1);
  EXPECT_EQ(exit_code_for(VerifyStatus::kExactFail), 1);
  EXPECT_EQ(exit_code_for(VerifyStatus::kInconclusive), 3);
}

const ScanRow& row_at(const std::vector<ScanRow>& rows, std::uint64_t k, unsigned d) {
  for (const auto& r : rows) {
    if (r.k == k && r.d == d) return r;
  }
  throw std::runtime_error("row missing");
}

TEST(Scan, PowersOfTwoDegreesOverF2) {
  Manifest m = manifest(2, Task::kScan, {1}, 16);
  m.d_min = 8;
  const auto rows = scan(m, {}, Catalog::builtin());
  ASSERT_EQ(rows.size(), 9u);
  for (unsigned d : {8u, 16u}) {
    const ScanRow& r = row_at(rows, 1, d);
    ASSERT_EQ(r.cells.size(), 1u);
    EXPECT_EQ(r.cells[0].guess.value, static_cast<long>(2 * d + 2));
    ASSERT_TRUE(r.cells[0].match.has_value());
    EXPECT_TRUE(*r.cells[0].match) << r.p_d.to_string();
  }
  EXPECT_EQ(row_at(rows, 1, 8).p_d.value, 18);
  EXPECT_EQ(row_at(rows, 1, 16).p_d.value, 34);
}

TEST(Scan, QuarticFieldGuesses) {
  Manifest m = manifest(4, Task::kScan, {3, 15}, 4);
  const auto rows = scan(m, {}, Catalog::builtin());
  const ScanRow& r3 = row_at(rows, 3, 3);
  EXPECT_EQ(r3.p_le_d.value, 24);  // b_1
  EXPECT_TRUE(r3.p_le_d.exact());
  const ScanRow& r15 = row_at(rows, 15, 2);
  EXPECT_EQ(r15.p_d.value, 48);  // 3(k + 1)
  EXPECT_EQ(row_at(rows, 15, 3).p_le_d.value, 4 * 24 + 12);
  for (const auto& r : rows) {
    for (const auto& c : r.cells) {
      ASSERT_TRUE(c.match.has_value()) << c.guess.source;
      EXPECT_TRUE(*c.match) << "k=" << r.k << " d=" << r.d << " " << c.guess.source;
    }
  }
}

TEST(Scan, ErrorColumnAgainstCatalog) {
  Manifest m = manifest(2, Task::kScan, {3}, 8);
  const auto rows = scan(m, {}, Catalog::builtin());
  for (const auto& r : rows) ASSERT_TRUE(r.e_le_d.has_value());
  // P_{<=d}(3) - 1/[1]^2 starts where the first missing prime contributes.
  EXPECT_GE(row_at(rows, 3, 8).e_le_d->value, 27);
}

TEST(Scan, GuessTable) {
  EXPECT_TRUE(finite_level_guesses(2, SumKind::kPK, 1, 7).empty());
  EXPECT_EQ(finite_level_guesses(2, SumKind::kConjA, 1, 27).at(0).value, 36);
  EXPECT_EQ(finite_level_guesses(3, SumKind::kPK, 2, 3).at(0).value, 6);
  EXPECT_TRUE(finite_level_guesses(2, SumKind::kPK, 1, 2).empty());
  EXPECT_EQ(finite_level_guesses(2, SumKind::kPK, 7, 17).at(0).quantity, "e_le_d");
  EXPECT_EQ(finite_level_guesses(2, SumKind::kPK, 7, 17).at(0).value, 132);
  EXPECT_TRUE(finite_level_guesses(2, SumKind::kPK, 3, 17).empty());
  EXPECT_EQ(finite_level_guesses(8, SumKind::kPK, 63, 3).at(0).value, 64 * 7);
  const auto q4 = finite_level_guesses(4, SumKind::kPK, 27, 1);  // n = 2, j = 1
  ASSERT_EQ(q4.size(), 1u);
  EXPECT_EQ(q4[0].value, 2 * 27 + 4 + 2);
  EXPECT_TRUE(finite_level_guesses(4, SumKind::kGP, 27, 1).empty());
}

TEST(Report, FrozenCsvHeader) {
  EXPECT_EQ(csv_header(), "q,kind,k,d,p_d,exact,div_q_qm1,eq_kd,has_dk_plus_1,runtime_ms\n");
  Manifest m = manifest(2, Task::kSum, {1}, 6);
  m.kind = SumKind::kConjA;
  m.format = "csv";
  const Report r = run(m);
  const std::string text = r.render("csv");
  EXPECT_EQ(text.rfind(csv_header(), 0), 0u);
  EXPECT_NE(text.find("\n2,CONJ_A,1,3,4,true,true,false,true,"), std::string::npos) << text;
  // At d_max = 6 the degree-6 series is only known through index 6.
  EXPECT_NE(text.find("\n2,CONJ_A,1,6,6,true,true,true,,"), std::string::npos) << text;
}

TEST(Report, EmbedsManifestAndVersion) {
  Manifest m = manifest(4, Task::kSum, {3}, 3);
  const Report r = run(m);
  EXPECT_EQ(r.document["version"], version());
  EXPECT_EQ(Manifest::from_json(r.document["manifest"]), m);
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Report, TwoRunsAgreeModuloTiming) {
  Manifest m = manifest(3, Task::kSum, {2}, 6);
  const Report a = run(m);
  const Report b = run(m);
  EXPECT_EQ(strip_volatile(a.document).dump(), strip_volatile(b.document).dump());
  EXPECT_NE(a.document.dump().find("runtime_ms"), std::string::npos);
  EXPECT_EQ(strip_volatile(a.document).dump().find("runtime_ms"), std::string::npos);
}

TEST(Report, WorkerCountDoesNotChangeReport) {
  Manifest m = manifest(4, Task::kSum, {3}, 6);
  const Report one = run(m);
  m.workers = 8;
  const Report eight = run(m);
  auto payload = [](const Report& r) {
    nlohmann::json j = strip_volatile(r.document);
    j.erase("manifest");
    return j.dump();
  };
  EXPECT_EQ(payload(one), payload(eight));
}

TEST(Resume, ExtendingThroughTheCacheMatchesAFreshRun) {
  const fs::path dir = scratch_dir("resume");
  Manifest m = manifest(2, Task::kSum, {3}, 10);
  m.cache_dir = dir.string();
  run(m);
  m.d_max = 14;
  const Report resumed = run(m);
  Manifest fresh = m;
  fresh.cache_dir.reset();
  const Report direct = run(fresh);
  nlohmann::json a = strip_volatile(resumed.document);
  nlohmann::json b = strip_volatile(direct.document);
  a.erase("manifest");
  b.erase("manifest");
  EXPECT_EQ(a, b);

  // A smaller range is served entirely from the cache.
  m.d_max = 8;
  const Report smaller = run(m);
  for (const auto& d : smaller.document["result"]["runs"][0]["degrees"]) EXPECT_TRUE(d["from_cache"].get<bool>());
}

TEST(Resume, MismatchedModulusIsRefused) {
  const fs::path dir = scratch_dir("mismatch");
  Manifest m = manifest(9, Task::kSum, {8}, 2);
  m.cache_dir = dir.string();
  run(m);
  m.field = FieldSpec::of_order(9, 14)->name();
  ASSERT_NE(m.field, FieldSpec::of_order(9)->name());
  EXPECT_THROW(run(m), CacheMismatch);
}

TEST(ValuationTheorems, Predicates) {
  EXPECT_TRUE(is_squarefree(1));
  EXPECT_TRUE(is_squarefree(30));
  EXPECT_FALSE(is_squarefree(12));
  EXPECT_TRUE(equality_expected(2, 2));
  EXPECT_TRUE(equality_expected(2, 4));
  EXPECT_TRUE(equality_expected(2, 12));
  EXPECT_FALSE(equality_expected(2, 8));
  EXPECT_FALSE(equality_expected(2, 3));
  EXPECT_TRUE(equality_expected(3, 6));
  EXPECT_FALSE(equality_expected(3, 9));
  EXPECT_FALSE(equality_expected(4, 4));
}

TEST(ValuationTheorems, SmallGridHolds) {
  for (unsigned q : {2u, 3u, 4u}) {
    const FieldPtr F = FieldSpec::of_order(q);
    for (std::uint64_t k = q - 1; k <= 2 * (q - 1); k += q - 1) {
      for (unsigned d = 1; d <= 5; ++d) {
        const ValuationTheoremCheck c = check_valuation_theorems(F, k, d);
        EXPECT_TRUE(c.holds()) << c.to_json().dump();
      }
    }
  }
}

TEST(ValuationTheorems, ExactZeroIsCertified) {
  // P_1(3) over F_4 vanishes exactly.
  const ValuationTheoremCheck c = check_valuation_theorems(FieldSpec::of_order(4), 3, 1);
  EXPECT_FALSE(c.p_d.exact());
  EXPECT_TRUE(c.holds());
}

TEST(PowerSums, ObservationShapes) {
  const FieldPtr F = FieldSpec::of_order(4);
  const auto obs = powersum_observations(F, 1, 1, 4);
  ASSERT_EQ(obs.size(), 4u);
  for (const auto& o : obs) {
    EXPECT_EQ(o.value, power_sum_primes(F, o.d, 1));
    EXPECT_TRUE(o.const_times_linear_zero);
  }
  EXPECT_TRUE(obs[0].value.is_zero());
  EXPECT_TRUE(obs[0].in_c_or_c_bracket1);
  // P(3, 1) = -1 = 1 over F_4.
  EXPECT_EQ(obs[2].value, Poly::constant(F, 1));
}

TEST(Run, EveryTaskProducesAReport) {
  std::vector<Manifest> ms;
  ms.push_back(manifest(3, Task::kPrimes, {1}, 3));
  Manifest rec = manifest(2, Task::kReconstruct, {3}, 12);
  ms.push_back(rec);
  Manifest sp = manifest(2, Task::kSpeyer, {1}, 1);
  sp.action = "check";
  sp.n_max = 4;
  ms.push_back(sp);
  Manifest ca = manifest(2, Task::kCarlitz, {1}, 1);
  ca.n_max = 5;
  ms.push_back(ca);
  ms.push_back(manifest(2, Task::kZetaCheck, {1}, 8));
  Manifest pw = manifest(3, Task::kPowersum, {1, 2}, 3);
  pw.kind = SumKind::kPower;
  ms.push_back(pw);
  for (const Manifest& m : ms) {
    const Report r = run(m);
    EXPECT_EQ(r.document["task"], to_string(m.task));
    EXPECT_EQ(r.exit_code, 0) << r.document.dump(1);
  }
}

}  // namespace
}  // namespace primesym
