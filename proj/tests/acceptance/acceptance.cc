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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Run from ctest; the suite criteria take a few
// minutes on one core.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.h"
#include "json.hpp"
#include "fuzzeraid/corpus/corpus.h"
#include "fuzzeraid/io/store.h"
#include "fuzzeraid/minilang/edit.h"
#include "fuzzeraid/minilang/parser.h"
#include "fuzzeraid/minilang/render.h"
#include "fuzzeraid/siggen/reduce.h"
#include "fuzzeraid/siggen/remap.h"
#include "fuzzeraid/siggen/slice.h"
#include "fuzzeraid/triage/similarity.h"
#include "support/brute_force.h"
#include "support/fixtures.h"
#include "support/random_programs.h"

namespace fuzzeraid::acceptance {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void Expect(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes.push_back(std::string(cond ? "" : "!") + what);
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int Cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "fuzzeraid");
  std::ostringstream o, e;
  int code = cli::Run(args, o, e);
  if (out != nullptr) *out = o.str();
  if (code != cli::kExitOk) std::cerr << e.str();
  return code;
}

std::string Fixture(const std::string& rel) { return testing::FixturePath(rel).string(); }

Json ReadJson(const fs::path& p) { return Json::parse(io::ReadText(p)); }

fs::path WriteFixtureCorpus(const std::string& program,
                            const std::vector<std::pair<std::string, std::string>>& inputs) {
  auto p = testing::LoadProgram(program);
  std::vector<triage::CrashRecord> records;
  for (const auto& [id, file] : inputs) {
    records.push_back(*corpus::MakeRecord(p, id, testing::ReadFixtureBytes(file)));
  }
  auto dir = testing::MakeTempDir("acc_corpus");
  io::WriteCorpus(dir, records);
  return dir;
}

std::set<std::string> Ids(const Json& arr) {
  std::set<std::string> s;
  for (const auto& x : arr) s.insert(x.get<std::string>());
  return s;
}

Check BranchingProgram() {
  Check c;
  auto start = Clock::now();
  auto corpus = WriteFixtureCorpus("branch/program.ml-src",
                                   {{"a", "branch/crash_a.bin"}, {"b", "branch/crash_b.bin"}});
  auto out = testing::MakeTempDir("acc_branch");
  c.Expect(Cli({"group", "--program", Fixture("branch/program.ml-src"), "--corpus",
                corpus.string(), "--out", out.string()}) == 0,
           "group ran");
  std::size_t groups = ReadJson(out / "groups.json").size();
  std::string afl_text;
  c.Expect(Cli({"baseline", "--program", Fixture("branch/program.ml-src"), "--corpus",
                corpus.string(), "--mode", "afl"},
               &afl_text) == 0,
           "baseline ran");
  int afl = Json::parse(afl_text)["group_count"].get<int>();
  double secs = Seconds(start);
  c.Expect(groups == 1, "group=" + std::to_string(groups));
  c.Expect(afl == 2, "afl=" + std::to_string(afl));
  c.Expect(secs < 5, std::to_string(secs) + "s");
  return c;
}

Check RecordStream() {
  Check c;
  auto start = Clock::now();
  auto corpus = WriteFixtureCorpus("records/program.ml-src", {{"b1c1", "records/bug1_crash1.bin"},
                                                           {"b1c2", "records/bug1_crash2.bin"},
                                                           {"b2c1", "records/bug2_crash1.bin"}});
  auto out = testing::MakeTempDir("acc_records");
  c.Expect(Cli({"group", "--program", Fixture("records/program.ml-src"), "--corpus",
                corpus.string(), "--out", out.string(), "--threshold", "0.7"}) == 0,
           "group ran");
  Json groups = ReadJson(out / "groups.json");
  c.Expect(groups.size() == 2, "group=" + std::to_string(groups.size()));
  if (groups.size() == 2) {
    c.Expect(Ids(groups[0]["signature_ids"]) == std::set<std::string>{"0001", "0002"} &&
                 Ids(groups[1]["signature_ids"]) == std::set<std::string>{"0003"},
             "{sig1,sig2},{sig3}");
  }
  std::string stack_text;
  c.Expect(Cli({"baseline", "--program", Fixture("records/program.ml-src"), "--corpus",
                corpus.string(), "--mode", "stack:5"},
               &stack_text) == 0,
           "baseline ran");
  bool together = false;
  const Json stack = Json::parse(stack_text);
  for (const auto& g : stack["groups"]) {
    auto ids = Ids(g["crash_ids"]);
    together |= ids.count("b1c1") && ids.count("b2c1");
  }
  c.Expect(together, "stack:5 merges b1c1+b2c1");
  double secs = Seconds(start);
  c.Expect(secs < 5, std::to_string(secs) + "s");
  return c;
}

struct SuiteRun {
  fs::path dir;
  int code = -1;
  double seconds = 0;
};

SuiteRun RunSuite(const std::string& tag, const std::string& jobs) {
  SuiteRun r;
  r.dir = testing::MakeTempDir(tag);
  auto start = Clock::now();
  r.code = Cli({"suite", "--dir", Fixture("suite"), "--out", r.dir.string(), "--rng", "1",
                "--jobs", jobs});
  r.seconds = Seconds(start);
  return r;
}

std::vector<fs::path> ProgramDirs(const fs::path& run) {
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(run)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

Check SuiteQuality(const SuiteRun& run) {
  Check c;
  c.Expect(run.code == 0, "suite ran");
  if (run.code != 0) return c;
  Json report = ReadJson(run.dir / "report.json");
  std::size_t bugs = report["bugs"].size();
  std::size_t fewest = SIZE_MAX;
  for (const auto& b : report["bugs"]) fewest = std::min<std::size_t>(fewest, b["crashes"]);
  const Json& total = report["total"];
  double crashes = total["crashes"];
  double correct = total["correct"];
  std::size_t incorrect = total["incorrect"];
  std::size_t groups = 0;
  for (const auto& d : ProgramDirs(run.dir)) groups += ReadJson(d / "groups.json").size();

  c.Expect(bugs >= 3, "bugs=" + std::to_string(bugs));
  c.Expect(fewest >= 50, "min crashes/bug=" + std::to_string(fewest));
  c.Expect(incorrect == 0, "incorrect=" + std::to_string(incorrect));
  char buf[64];
  std::snprintf(buf, sizeof buf, "correct=%.2f%%", crashes > 0 ? 100 * correct / crashes : 0.0);
  c.Expect(crashes > 0 && correct >= 0.99 * crashes, buf);
  c.Expect(static_cast<double>(groups) <= 1.2 * static_cast<double>(bugs),
           "groups=" + std::to_string(groups));
  c.Expect(run.seconds < 300, std::to_string(run.seconds) + "s");
  return c;
}

// Reduced size against the exhaustive minimum for one crash.
bool MatchesBruteForce(const minilang::Program& p, const Bytes& input, std::size_t budget,
                       std::string* why) {
  auto out = minilang::Execute(p, input, budget);
  if (!out.crashed()) return true;
  siggen::ReduceOptions o;
  o.step_budget = budget;
  auto reduced = siggen::Reduce(p, input, *out.fingerprint, o);
  auto oracle = testing::BruteForceMinimum(p, input, *out.fingerprint, budget);
  if (testing::ProgramSize(reduced.program) == oracle.min_size &&
      oracle.minimal_renderings.count(minilang::Render(reduced.program))) {
    return true;
  }
  *why = minilang::Render(p);
  return false;
}

Check Reducer(const SuiteRun& run) {
  Check c;
  auto start = Clock::now();
  std::size_t compared = 0, mismatched = 0;
  std::string why;

  // Hand-written programs: the branching one, the record stream crashes and
  // a ten-node one.
  std::vector<std::pair<std::string, std::string>> fixed = {
      {"branch/program.ml-src", "branch/crash_a.bin"},
      {"records/program.ml-src", "records/bug1_crash1.bin"},
      {"records/program.ml-src", "records/bug1_crash2.bin"},
      {"records/program.ml-src", "records/bug2_crash1.bin"},
      {"reduce10/program.ml-src", "reduce10/crash.bin"}};
  for (const auto& [prog, input] : fixed) {
    auto original = testing::LoadProgram(prog);
    Bytes bytes = testing::ReadFixtureBytes(input);
    auto out = minilang::Execute(original, bytes);
    auto slice = siggen::SliceProgram(original, out.trace);
    if (minilang::RemovableCount(slice) > 12) continue;
    ++compared;
    if (!MatchesBruteForce(slice, bytes, minilang::kDefaultStepBudget, &why)) ++mismatched;
  }

  std::mt19937_64 rng(4242);
  for (int attempt = 0; attempt < 400 && compared < 60; ++attempt) {
    auto p = minilang::Parse(testing::RandomCrasher(rng), minilang::ParseMode::kExecutable);
    Bytes input{static_cast<std::uint8_t>('a' + rng() % 26),
                static_cast<std::uint8_t>('a' + rng() % 26)};
    if (minilang::RemovableCount(p) > 12 || !minilang::Execute(p, input, 10'000).crashed()) {
      continue;
    }
    ++compared;
    if (!MatchesBruteForce(p, input, 10'000, &why)) ++mismatched;
  }
  c.Expect(mismatched == 0, "brute force " + std::to_string(compared - mismatched) + "/" +
                                std::to_string(compared));
  if (mismatched != 0) std::cerr << "reducer missed the minimum on:\n" << why;

  // Every signature the suite produced is 1-minimal on its origin input.
  std::size_t sigs = 0, not_minimal = 0;
  if (run.code == 0) {
    for (const auto& d : ProgramDirs(run.dir)) {
      std::map<std::string, Bytes> inputs;
      for (auto& r : io::ReadCorpus(d / "corpus")) inputs[r.id] = std::move(r.input);
      for (const auto& s : io::ReadSignatureStore(d / "signatures")) {
        ++sigs;
        if (!s.minimal ||
            !siggen::OneMinimalityViolations(s.program, inputs.at(s.origin_crash),
                                             s.reference_fingerprint)
                 .empty()) {
          ++not_minimal;
        }
      }
    }
  }
  c.Expect(run.code == 0 && sigs > 0 && not_minimal == 0,
           "1-minimal " + std::to_string(sigs - not_minimal) + "/" + std::to_string(sigs));
  double secs = Seconds(start);
  c.Expect(secs < 120, std::to_string(secs) + "s");
  return c;
}

minilang::CallStack Stack(const std::vector<std::string>& names) {
  minilang::CallStack s;
  for (const auto& n : names) s.push_back({n, 1});
  return s;
}

siggen::FaultSignature Sig(const std::string& src, const std::vector<std::string>& stack) {
  siggen::FaultSignature s;
  s.program = minilang::Parse(src, minilang::ParseMode::kExecutable);
  s.reference_fingerprint.stack = Stack(stack);
  return s;
}

Check Similarity() {
  Check c;
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
  double half = triage::SignatureSimilarity(std::vector<std::string>{"a", "b"},
                                            std::vector<std::string>{"a", "c"});
  double two_thirds = triage::CallStackSimilarity(Stack({"main", "foo", "bug"}),
                                                  Stack({"main", "bar", "bug"}));
  double three_quarters =
      triage::SimilarityScore(Sig("fn main() { x = 1; y = 2; z = 3; w = 4; }", {"main"}),
                              Sig("fn main() { x = 1; q = 5; r = 6; s = 7; }", {"main"}));
  c.Expect(near(half, 0.5), "0.5");
  c.Expect(near(two_thirds, 2.0 / 3.0), "2/3");
  c.Expect(near(three_quarters, 0.75), "0.75");

  static const char* kPool[] = {"x = 1;", "y = x + 1;", "f(x);", "ptr p;", "assert(x);",
                                "x = input(0);", "free(p);", "z = 0;"};
  static const char* kNames[] = {"main", "f", "g", "h", "bug", "trigger"};
  std::mt19937 rng(7);
  auto random_sig = [&] {
    std::string text = "fn f(a) { return a; } fn main() { int x = 0; ";
    for (int i = static_cast<int>(rng() % 8); i > 0; --i) text += std::string(kPool[rng() % 8]) + " ";
    std::vector<std::string> stack;
    for (int i = 1 + static_cast<int>(rng() % 6); i > 0; --i) stack.push_back(kNames[rng() % 6]);
    return Sig(text + "}", stack);
  };
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    auto a = random_sig();
    auto b = random_sig();
    double ab = triage::SimilarityScore(a, b);
    double ba = triage::SimilarityScore(b, a);
    if (ab != ba || ab < 0 || ab > 1) ++bad;
  }
  c.Expect(bad == 0, "10000 random pairs, bad=" + std::to_string(bad));
  return c;
}

Check Determinism(const SuiteRun& a, const SuiteRun& b) {
  Check c;
  c.Expect(a.code == 0 && b.code == 0, "both runs");
  if (!c.ok) return c;
  auto da = ProgramDirs(a.dir);
  auto db = ProgramDirs(b.dir);
  c.Expect(da.size() == db.size(), "same programs");
  std::size_t files = 0, differ = 0;
  for (std::size_t i = 0; i < std::min(da.size(), db.size()); ++i) {
    for (const char* f : {"groups.json", "missed.json"}) {
      ++files;
      if (io::ReadText(da[i] / f) != io::ReadText(db[i] / f)) {
        ++differ;
        std::cerr << "differs: " << (da[i].filename() / f) << "\n";
      }
    }
  }
  ++files;
  if (io::ReadText(a.dir / "report.json") != io::ReadText(b.dir / "report.json")) ++differ;
  c.Expect(differ == 0, std::to_string(files - differ) + "/" + std::to_string(files) +
                            " files identical (jobs 1 vs 3)");
  return c;
}

Check BaselineDirection(const SuiteRun& run) {
  Check c;
  c.Expect(run.code == 0, "suite ran");
  if (run.code != 0) return c;
  std::size_t sig = 0;
  std::map<std::string, std::size_t> base;
  for (const auto& d : ProgramDirs(run.dir)) {
    sig += ReadJson(d / "groups.json").size();
    for (const auto& r : ReadJson(d / "baselines.json")) {
      base[r["strategy"].get<std::string>()] += r["group_count"].get<std::size_t>();
    }
  }
  std::size_t s1 = base["stack:1"], s5 = base["stack:5"], afl = base["afl"];
  c.Expect(sig <= s1, "sig=" + std::to_string(sig) + " <= stack:1=" + std::to_string(s1));
  c.Expect(s1 <= s5, "stack:1 <= stack:5=" + std::to_string(s5));
  c.Expect(sig < afl, "sig < afl=" + std::to_string(afl));
  return c;
}

void Print(int n, const std::string& name, const Check& c) {
  std::cout << (c.ok ? "PASS" : "FAIL") << " " << n << " " << name << ":";
  for (const auto& note : c.notes) std::cout << " " << note;
  std::cout << std::endl;
}

int Main() {
  bool ok = true;
  auto report = [&](int n, const std::string& name, const Check& c) {
    Print(n, name, c);
    ok &= c.ok;
  };
  report(1, "branching program", BranchingProgram());
  report(2, "record stream", RecordStream());
  SuiteRun first = RunSuite("acc_run1", "1");
  report(3, "fixture suite", SuiteQuality(first));
  report(4, "reducer", Reducer(first));
  report(5, "similarity", Similarity());
  SuiteRun second = RunSuite("acc_run2", "3");
  report(6, "determinism", Determinism(first, second));
  report(7, "baseline direction", BaselineDirection(first));
  return ok ? 0 : 1;
}

}  // namespace
}  // namespace fuzzeraid::acceptance

int main() {
  try {
    return fuzzeraid::acceptance::Main();
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << "\n";
    return 1;
  }
}
