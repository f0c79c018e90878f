// Copyright 2026 The FuzzerAid Authors.
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

#include "cli/cli.h"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cli/pipeline.h"
#include "fuzzeraid/baselines/baselines.h"
#include "fuzzeraid/corpus/corpus.h"
#include "fuzzeraid/io/store.h"
#include "fuzzeraid/siggen/signature.h"
#include "fuzzeraid/triage/triage.h"

namespace fuzzeraid::cli {
namespace {

namespace fs = std::filesystem;

// Shared by the commands that run programs.
struct Tunables {
  double threshold = 0.7;
  std::size_t step_budget = minilang::kDefaultStepBudget;
  int retries = 10;
  std::size_t max_oracle_runs = 10'000;
  std::size_t jobs = 1;

  triage::TriageConfig Config() const {
    triage::TriageConfig c;
    c.threshold = threshold;
    c.step_budget = step_budget;
    c.retries = retries;
    c.max_oracle_runs = max_oracle_runs;
    return c;
  }
};

void AddTunables(CLI::App* cmd, Tunables& t, bool triage) {
  if (triage) {
    cmd->add_option("--threshold", t.threshold, "merge threshold for signature similarity")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--retries", t.retries, "attempts per signature when classifying")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-oracle-runs", t.max_oracle_runs, "reducer execution budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  cmd->add_option("--step-budget", t.step_budget, "interpreter steps per execution")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--jobs", t.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

std::optional<std::size_t> ParseStackFrames(const std::string& mode) {
  if (mode.rfind("stack:", 0) != 0) return std::nullopt;
  std::size_t n = 0;
  const char* first = mode.data() + 6;
  const char* last = mode.data() + mode.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || first == last || n == 0) return std::nullopt;
  return n;
}

std::string CheckMode(const std::string& mode) {
  if (mode == "afl" || mode == "site" || ParseStackFrames(mode)) return {};
  return "mode must be afl, site or stack:N with N >= 1";
}

// Crashes of `corpus` that no longer crash `original`.
std::vector<std::string> NonCrashing(const std::vector<triage::CrashRecord>& corpus,
                                     const minilang::Program& original, const Tunables& t) {
  auto compiled = minilang::Compile(original);
  if (!compiled.ok()) throw Error(ErrorCode::kInvalidProgram, compiled.message);
  minilang::ExecuteOptions exec;
  exec.step_budget = t.step_budget;
  exec.record_coverage = false;
  std::vector<char> bad(corpus.size(), 0);
  ParallelFor(corpus.size(), t.jobs, [&](std::size_t i) {
    bad[i] = !minilang::Execute(*compiled.program, corpus[i].input, exec).crashed();
  });
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (bad[i]) ids.push_back(corpus[i].id);
  }
  return ids;
}

void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::WriteText(path, text);
  }
}

struct ExploreArgs {
  std::string program, seed, out, prefix = "c";
  std::size_t iters = 1000;
  std::uint64_t rng = 0;
  std::size_t max_size = 64;
  Tunables t;
};

int Explore(const ExploreArgs& a, std::optional<std::uint64_t> env_seed, std::ostream& out) {
  corpus::ExploreOptions o;
  o.iterations = a.iters;
  o.rng_seed = env_seed.value_or(a.rng);
  o.step_budget = a.t.step_budget;
  o.max_input_size = a.max_size;
  o.id_prefix = a.prefix;
  auto crashes = corpus::Explore(io::ReadProgram(a.program), io::ReadBytes(a.seed), o);
  io::WriteCorpus(a.out, crashes);
  out << "explored " << crashes.size() << " crashes into " << a.out << "\n";
  return kExitOk;
}

struct GroupArgs {
  std::string program, corpus, out, seed_signatures;
  Tunables t;
};

int Group(const GroupArgs& a, std::ostream& out, std::ostream& err) {
  minilang::Program original = io::ReadProgram(a.program);
  auto crashes = io::ReadCorpus(a.corpus);
  auto bad = NonCrashing(crashes, original, a.t);
  if (!bad.empty()) {
    for (const auto& id : bad) err << "error: corpus input " << id << " does not crash the program\n";
    return kExitFailure;
  }
  std::vector<siggen::FaultSignature> seeds;
  if (!a.seed_signatures.empty()) seeds = io::ReadSignatureStore(a.seed_signatures);

  triage::TriageConfig config = a.t.Config();
  auto grouping = triage::GroupCrashes(crashes, std::move(seeds), original, config);
  auto groups = triage::MergeGroups(grouping.signatures, config);

  // Seed signatures remember crashes from earlier campaigns; groups.json
  // lists this corpus only.
  std::set<std::string> ids;
  for (const auto& c : crashes) ids.insert(c.id);
  std::vector<triage::FaultGroup> kept;
  for (auto& g : groups) {
    std::vector<std::string> members;
    for (auto& m : g.members) {
      if (ids.count(m) != 0) members.push_back(std::move(m));
    }
    g.members = std::move(members);
    if (!g.members.empty()) kept.push_back(std::move(g));
  }

  const fs::path dir = a.out;
  io::WriteSignatureStore(dir / "signatures", grouping.signatures);
  io::WriteText(dir / "groups.json", io::GroupsJson(kept));
  io::WriteText(dir / "missed.json", io::MissedJson(grouping.missed));
  out << "groups: " << kept.size() << "\nsignatures: " << grouping.signatures.size()
      << " (" << grouping.generated << " new)\nmissed: " << grouping.missed.size() << "\n";
  return kExitOk;
}

struct BaselineArgs {
  std::string program, corpus, mode, out;
  Tunables t;
};

int Baseline(const BaselineArgs& a, std::ostream& out) {
  auto crashes = io::ReadCorpus(a.corpus);
  baselines::DedupReport report;
  if (a.mode == "afl") {
    baselines::CoverageConfig c;
    c.step_budget = a.t.step_budget;
    report = baselines::DedupCoverage(crashes, io::ReadProgram(a.program), c);
  } else if (a.mode == "site") {
    report = baselines::DedupCrashSite(crashes);
  } else {
    report = baselines::DedupStackHash(crashes, *ParseStackFrames(a.mode));
  }
  Emit(io::DedupReportJson(report), a.out, out);
  return kExitOk;
}

struct LabelArgs {
  std::string program, corpus, out;
  std::vector<std::string> patches;
  bool write_manifest = false;
  Tunables t;
};

int Label(const LabelArgs& a, std::ostream& out, std::ostream& err) {
  minilang::Program original = io::ReadProgram(a.program);
  auto crashes = io::ReadCorpus(a.corpus);
  std::map<std::string, minilang::Program> patches;
  for (const auto& spec : a.patches) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      err << "error: --patch expects BUG=FILE, got '" << spec << "'\n";
      return kExitUsage;
    }
    patches[spec.substr(0, eq)] = io::ReadProgram(spec.substr(eq + 1));
  }
  // Labeling is independent per crash; split the corpus across workers.
  const std::size_t chunks = std::max<std::size_t>(1, std::min(a.t.jobs, crashes.size()));
  std::vector<std::vector<corpus::GroundTruthLabel>> parts(chunks);
  ParallelFor(chunks, a.t.jobs, [&](std::size_t k) {
    std::vector<triage::CrashRecord> slice;
    for (std::size_t i = k; i < crashes.size(); i += chunks) slice.push_back(crashes[i]);
    parts[k] = corpus::LabelWithPatches(slice, original, patches, a.t.step_budget);
  });
  std::vector<corpus::GroundTruthLabel> labels(crashes.size());
  for (std::size_t k = 0; k < chunks; ++k) {
    for (std::size_t j = 0; j < parts[k].size(); ++j) labels[k + j * chunks] = std::move(parts[k][j]);
  }

  std::size_t known = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& l = labels[i];
    if (l.fixed_by.size() > 1) {
      err << "warning: " << l.crash_id << " stops crashing under several patches;"
          << " labeled unknown\n";
    }
    if (l.bug) ++known;
    crashes[i].label = l.bug;
  }
  io::WriteText(a.out, io::LabelsJson(labels));
  if (a.write_manifest) io::WriteCorpus(a.corpus, crashes);
  out << "labeled " << known << " of " << labels.size() << " crashes\n";
  return kExitOk;
}

struct ReportArgs {
  std::string run, labels, format = "json", out;
};

int Report(const ReportArgs& a, std::ostream& out) {
  const fs::path dir = a.run;
  auto groups = io::ParseGroups(io::ReadText(dir / "groups.json"));
  auto missed = io::ParseMissed(io::ReadText(dir / "missed.json"));
  auto sigs = io::ReadSignatureStore(dir / "signatures");
  auto labels = io::ParseLabels(io::ReadText(a.labels));
  std::vector<std::string> missed_ids;
  for (const auto& m : missed) missed_ids.push_back(m.crash_id);
  corpus::Metrics m = corpus::Score(groups, sigs, labels, missed_ids);
  Emit(a.format == "csv" ? io::MetricsCsv(m) : io::MetricsJson(m), a.out, out);
  return kExitOk;
}

struct ValidateArgs {
  std::string store, program, corpus;
  Tunables t;
};

int Validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  minilang::Program original = io::ReadProgram(a.program);
  std::map<std::string, Bytes> inputs;
  for (auto& c : io::ReadCorpus(a.corpus)) inputs[c.id] = std::move(c.input);
  auto sigs = io::ReadSignatureStore(a.store);
  std::vector<std::vector<std::string>> problems(sigs.size());
  ParallelFor(sigs.size(), a.t.jobs, [&](std::size_t i) {
    auto it = inputs.find(sigs[i].origin_crash);
    if (it == inputs.end()) {
      problems[i].push_back("origin crash " + sigs[i].origin_crash + " is not in the corpus");
    } else {
      problems[i] = siggen::CheckSignature(sigs[i], original, it->second, a.t.step_budget);
    }
  });
  std::size_t bad = 0;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    for (const auto& p : problems[i]) err << "sig " << sigs[i].id << ": " << p << "\n";
    if (!problems[i].empty()) ++bad;
  }
  out << sigs.size() - bad << " of " << sigs.size() << " signatures valid\n";
  return bad == 0 ? kExitOk : kExitFailure;
}

struct SuiteArgs {
  std::string dir, out, format = "json";
  std::size_t iters = 2000;
  std::uint64_t rng = 1;
  std::size_t cap = 250;
  Tunables t;
};

int Suite(const SuiteArgs& a, std::optional<std::uint64_t> env_seed, std::ostream& out) {
  std::vector<fs::path> dirs;
  if (fs::exists(fs::path(a.dir) / "program.ml-src")) {
    dirs.push_back(a.dir);
  } else {
    dirs = io::ListSuite(a.dir);
  }
  if (dirs.empty()) throw Error(ErrorCode::kIoError, "no fixture programs under " + a.dir);

  PipelineOptions o;
  o.iterations = a.iters;
  o.rng_seed = env_seed.value_or(a.rng);
  o.per_bug_cap = a.cap;
  o.triage = a.t.Config();
  std::vector<PipelineResult> results(dirs.size());
  ParallelFor(dirs.size(), a.t.jobs,
              [&](std::size_t i) { results[i] = RunPipeline(io::LoadSuiteProgram(dirs[i]), o); });

  const fs::path root = a.out;
  std::vector<corpus::Metrics> parts;
  std::map<std::string, std::size_t> baseline_totals;
  for (const auto& r : results) {
    WritePipeline(root / r.name, r);
    parts.push_back(r.metrics);
    for (const auto& b : r.baselines) baseline_totals[b.strategy] += b.group_count;
  }
  corpus::Metrics all = corpus::Combine(parts);
  if (a.format == "csv") {
    io::WriteText(root / "report.csv", io::MetricsCsv(all));
  } else {
    io::WriteText(root / "report.json", io::MetricsJson(all));
  }

  std::size_t groups = 0;
  for (const auto& r : results) groups += r.groups.size();
  out << "programs: " << results.size() << "\nbugs: " << all.bugs.size()
      << "\ncrashes: " << all.totals.crashes << " (+" << all.unknown << " unknown)"
      << "\ncorrect: " << all.totals.correct << "\nincorrect: " << all.totals.incorrect
      << "\nmissed: " << all.totals.missed << "\ngroups: " << groups << "\n";
  for (const auto& [strategy, n] : baseline_totals) out << strategy << " groups: " << n << "\n";
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<std::uint64_t> env_seed;
  if (const char* s = std::getenv("FUZZERAID_SEED"); s != nullptr && *s != '\0') {
    std::uint64_t v = 0;
    const char* end = s + std::char_traits<char>::length(s);
    auto [ptr, ec] = std::from_chars(s, end, v);
    if (ec != std::errc() || ptr != end) {
      err << "error: FUZZERAID_SEED must be an unsigned integer\n";
      return kExitUsage;
    }
    env_seed = v;
  }

  CLI::App app{"Groups fuzzer crashes by the minimal programs that reproduce them.", "fuzzeraid"};
  app.require_subcommand(1);

  ExploreArgs ex;
  CLI::App* explore = app.add_subcommand("explore", "build a crash corpus from one crashing seed");
  explore->add_option("--program", ex.program, "program (.ml-src)")->required()->check(CLI::ExistingFile);
  explore->add_option("--seed-input", ex.seed, "crashing input")->required()->check(CLI::ExistingFile);
  explore->add_option("--iters", ex.iters, "mutation attempts")->capture_default_str();
  explore->add_option("--rng", ex.rng, "rng seed (FUZZERAID_SEED overrides)")->capture_default_str();
  explore->add_option("--out", ex.out, "corpus directory to write")->required();
  explore->add_option("--max-size", ex.max_size, "largest mutant in bytes")->capture_default_str();
  explore->add_option("--id-prefix", ex.prefix, "prefix for crash ids")->capture_default_str();
  AddTunables(explore, ex.t, false);

  GroupArgs gr;
  CLI::App* group = app.add_subcommand("group", "generate, classify and merge fault signatures");
  group->add_option("--program", gr.program)->required()->check(CLI::ExistingFile);
  group->add_option("--corpus", gr.corpus)->required()->check(CLI::ExistingDirectory);
  group->add_option("--out", gr.out, "output directory")->required();
  group->add_option("--seed-signatures", gr.seed_signatures, "signature store from an earlier run")
      ->check(CLI::ExistingDirectory);
  AddTunables(group, gr.t, true);

  BaselineArgs bl;
  CLI::App* baseline = app.add_subcommand("baseline", "deduplicate with a fuzzer-style baseline");
  baseline->add_option("--program", bl.program)->required()->check(CLI::ExistingFile);
  baseline->add_option("--corpus", bl.corpus)->required()->check(CLI::ExistingDirectory);
  baseline->add_option("--mode", bl.mode, "afl | stack:N | site")->required()->check(CheckMode);
  baseline->add_option("--out", bl.out, "write here instead of stdout");
  AddTunables(baseline, bl.t, false);

  LabelArgs lb;
  CLI::App* label = app.add_subcommand("label", "label crashes with the patch that fixes them");
  label->add_option("--program", lb.program)->required()->check(CLI::ExistingFile);
  label->add_option("--corpus", lb.corpus)->required()->check(CLI::ExistingDirectory);
  label->add_option("--patch", lb.patches, "BUG=FILE, repeatable")->required();
  label->add_option("--out", lb.out, "labels file")->required();
  label->add_flag("--write-manifest", lb.write_manifest, "also store labels in the manifest");
  AddTunables(label, lb.t, false);

  ReportArgs rp;
  CLI::App* report = app.add_subcommand("report", "score a grouping against labels");
  report->add_option("--run", rp.run, "output directory of `group`")->required()->check(CLI::ExistingDirectory);
  report->add_option("--labels", rp.labels)->required()->check(CLI::ExistingFile);
  report->add_option("--format", rp.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  report->add_option("--out", rp.out, "write here instead of stdout");

  ValidateArgs va;
  CLI::App* validate = app.add_subcommand("validate", "re-check every signature in a store");
  validate->add_option("--store", va.store)->required()->check(CLI::ExistingDirectory);
  validate->add_option("--program", va.program)->required()->check(CLI::ExistingFile);
  validate->add_option("--corpus", va.corpus, "corpus holding the origin crashes")
      ->required()
      ->check(CLI::ExistingDirectory);
  AddTunables(validate, va.t, false);

  SuiteArgs su;
  CLI::App* suite = app.add_subcommand("suite", "run the whole pipeline on fixture programs");
  suite->add_option("--dir", su.dir, "a fixture program directory or a directory of them")
      ->required()
      ->check(CLI::ExistingDirectory);
  suite->add_option("--out", su.out)->required();
  suite->add_option("--iters", su.iters)->capture_default_str();
  suite->add_option("--rng", su.rng, "rng seed (FUZZERAID_SEED overrides)")->capture_default_str();
  suite->add_option("--per-bug-cap", su.cap)->check(CLI::PositiveNumber)->capture_default_str();
  suite->add_option("--format", su.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  AddTunables(suite, su.t, true);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (explore->parsed()) return Explore(ex, env_seed, out);
    if (group->parsed()) return Group(gr, out, err);
    if (baseline->parsed()) return Baseline(bl, out);
    if (label->parsed()) return Label(lb, out, err);
    if (report->parsed()) return Report(rp, out);
    if (validate->parsed()) return Validate(va, out, err);
    if (suite->parsed()) return Suite(su, env_seed, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace fuzzeraid::cli
