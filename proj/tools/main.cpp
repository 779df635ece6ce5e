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

// primesym: command-line front end.  Every subcommand builds a Manifest,
// optionally starting from a manifest file, runs it and writes the report to
// --out or standard output.  Heartbeat lines go to standard error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "primesym/error.hpp"
#include "primesym/experiments.hpp"

namespace {

using primesym::Manifest;
using primesym::Task;

struct Flags {
  unsigned q = 2;
  std::uint64_t modulus = 0;
  std::string field;
  std::string k;
  std::string kind;
  unsigned d_min = 1;
  unsigned d_max = 1;
  long horizon = 0;
  unsigned workers = 1;
  std::string cache_dir;
  std::string out;
  std::string format = "json";
  std::string manifest;
  std::string save_manifest;
  std::string positional;
  unsigned n_max = 6;
  std::string input;
  long max_deg = 0;
  bool quiet = false;
};

struct Options {
  CLI::Option* q = nullptr;
  CLI::Option* modulus = nullptr;
  CLI::Option* field = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* kind = nullptr;
  CLI::Option* d_min = nullptr;
  CLI::Option* d_max = nullptr;
  CLI::Option* horizon = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* cache_dir = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* n_max = nullptr;
  CLI::Option* input = nullptr;
  CLI::Option* max_deg = nullptr;
  CLI::Option* positional = nullptr;
};

Options add_common(CLI::App* sub, Flags& f) {
  Options o;
  o.q = sub->add_option("--q", f.q, "Field order q = p^m (q <= 256)");
  o.modulus = sub->add_option("--modulus", f.modulus,
                              "Field modulus as a code sum c_i p^i including the leading term");
  o.field = sub->add_option("--field", f.field, "Field label p^m/modulus-code (overrides --q)");
  o.k = sub->add_option("--k", f.k, "k values: 3 | 3,7,15 | 1..20 | 3..63/6");
  o.kind = sub->add_option("--kind", f.kind, "Summand: CONJ_A, PK, GP or POWER");
  o.d_min = sub->add_option("--dmin", f.d_min, "Smallest prime degree");
  o.d_max = sub->add_option("--dmax", f.d_max, "Largest prime degree");
  o.horizon = sub->add_option("--horizon", f.horizon, "Coefficient horizon (default: determinable horizon)");
  o.workers = sub->add_option("--workers", f.workers, "Worker threads; results do not depend on it");
  o.cache_dir = sub->add_option("--cache-dir", f.cache_dir, "Per-degree cache directory (enables resume)");
  o.out = sub->add_option("--out", f.out, "Report path (default: standard output)");
  o.format = sub->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--manifest", f.manifest, "Start from a manifest file; flags given here override it");
  sub->add_option("--save-manifest", f.save_manifest, "Write the effective manifest to this path");
  sub->add_flag("--quiet", f.quiet, "Suppress progress on standard error");
  return o;
}

Manifest build_manifest(Task task, const Flags& f, const Options& o) {
  Manifest m = f.manifest.empty() ? Manifest{} : Manifest::load(f.manifest);
  m.task = task;
  if (o.field->count() > 0) {
    m.field = primesym::FieldSpec::parse(f.field)->name();
  } else if (o.q->count() > 0 || o.modulus->count() > 0) {
    const unsigned q = o.q->count() > 0 ? f.q : m.field_ptr()->q();
    const std::optional<std::uint64_t> mod =
        o.modulus->count() > 0 ? std::optional<std::uint64_t>(f.modulus) : std::nullopt;
    m.field = primesym::FieldSpec::of_order(q, mod)->name();
  } else if (f.manifest.empty()) {
    m.field = primesym::FieldSpec::of_order(2)->name();
  }
  if (o.k->count() > 0) m.ks = primesym::parse_k_list(f.k);
  if (o.kind->count() > 0) m.kind = primesym::parse_sum_kind(f.kind);
  if (o.d_min->count() > 0) m.d_min = f.d_min;
  if (o.d_max->count() > 0) m.d_max = f.d_max;
  if (o.d_max->count() > 0 && o.d_min->count() == 0 && f.manifest.empty()) m.d_min = 1;
  if (o.horizon->count() > 0) m.horizon = f.horizon;
  if (o.workers->count() > 0) m.workers = f.workers;
  if (o.cache_dir->count() > 0) m.cache_dir = f.cache_dir;
  if (o.out->count() > 0) m.out = f.out;
  if (o.format->count() > 0) m.format = f.format;
  if (o.n_max && o.n_max->count() > 0) m.n_max = f.n_max;
  if (o.input && o.input->count() > 0) m.input = f.input;
  if (o.max_deg && o.max_deg->count() > 0) m.max_deg = f.max_deg;
  if (o.positional && o.positional->count() > 0) {
    if (task == Task::kVerify) {
      m.conjecture = f.positional;
    } else {
      m.action = f.positional;
    }
  }
  if (task == Task::kPowersum && o.kind->count() == 0) m.kind = primesym::SumKind::kPower;
  return m;
}

int execute(const Manifest& m, const Flags& f) {
  if (!f.save_manifest.empty()) m.save(f.save_manifest);
  primesym::RunOptions options;
  if (!f.quiet) options.progress = [](const std::string& line) { std::cerr << line << std::endl; };
  const primesym::Report report = primesym::run(m, options);
  const std::string text = report.render(m.format);
  if (m.out) {
    std::ofstream file(*m.out);
    if (!file) throw primesym::UsageError("cannot write report " + *m.out);
    file << text;
  } else {
    std::cout << text;
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primesym: sums over the primes of F_q[t] as Laurent series in 1/t"};
  app.set_version_flag("--version", primesym::version());
  app.require_subcommand(1);

  struct Entry {
    Task task;
    CLI::App* sub;
    Flags flags;
    Options opts;
  };
  std::vector<std::unique_ptr<Entry>> entries;
  auto add = [&](Task task, const std::string& name, const std::string& help) -> Entry& {
    auto e = std::make_unique<Entry>();
    e->task = task;
    e->sub = app.add_subcommand(name, help);
    e->opts = add_common(e->sub, e->flags);
    entries.push_back(std::move(e));
    return *entries.back();
  };

  add(Task::kPrimes, "primes", "Count (and for small degrees list) the monic primes of each degree");
  add(Task::kSum, "sum", "Per-degree and cumulative sums with valuations and flags");
  {
    Entry& e = add(Task::kVerify, "verify", "Check a conjecture instance: A, B, C or D");
    e.opts.positional = e.sub->add_option("conjecture", e.flags.positional, "A, B, C or D")
                            ->required()
                            ->check(CLI::IsMember({"A", "B", "C", "D"}));
    e.opts.max_deg = e.sub->add_option("--max-deg", e.flags.max_deg, "Degree bound for reconstruction");
  }
  add(Task::kScan, "scan", "Tabulate valuations over a (k, d) grid against the finite-level guesses");
  {
    Entry& e = add(Task::kReconstruct, "reconstruct", "Rational reconstruction of a computed or stored series");
    e.opts.input = e.sub->add_option("--input", e.flags.input, "Series JSON file (default: compute P(k))");
    e.opts.max_deg = e.sub->add_option("--max-deg", e.flags.max_deg, "Numerator and denominator degree bound");
  }
  {
    Entry& e = add(Task::kSpeyer, "speyer", "Symmetric-function identities: xn, yn, check, specialize");
    e.opts.positional = e.sub->add_option("action", e.flags.positional, "xn | yn | check | specialize")
                            ->required()
                            ->check(CLI::IsMember({"xn", "yn", "check", "specialize"}));
    e.opts.n_max = e.sub->add_option("--n-max", e.flags.n_max, "Largest n");
  }
  {
    Entry& e = add(Task::kCarlitz, "carlitz", "Carlitz factorial identities");
    e.opts.positional = e.sub->add_option("action", e.flags.positional, "check")
                            ->check(CLI::IsMember({"check"}));
    e.opts.n_max = e.sub->add_option("--n-max", e.flags.n_max, "Largest n");
  }
  add(Task::kZetaCheck, "zeta-check", "Compare the zeta log-derivative and Euler product with the engine");
  add(Task::kPowersum, "powersum", "Power sums P(d, k) of the primes of degree d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : primesym::kExitUsage;
  }

  for (const auto& e : entries) {
    if (!e->sub->parsed()) continue;
    try {
      const Manifest m = build_manifest(e->task, e->flags, e->opts);
      return execute(m, e->flags);
    } catch (const primesym::BudgetExceeded& ex) {
      std::cerr << "primesym: budget exceeded: " << ex.what() << '\n';
      return primesym::kExitBudget;
    } catch (const primesym::ConsistencyError& ex) {
      std::cerr << "primesym: internal consistency failure: " << ex.what() << '\n';
      return primesym::kExitRefuted;
    } catch (const primesym::Error& ex) {
      std::cerr << "primesym: " << ex.what() << '\n';
      return primesym::kExitUsage;
    } catch (const std::bad_alloc&) {
      std::cerr << "primesym: out of memory\n";
      return primesym::kExitBudget;
    }
  }
  return primesym::kExitUsage;
}
