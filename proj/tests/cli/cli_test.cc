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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cstdlib>
#include <set>
#include <sstream>

#include "json.hpp"
#include "fuzzeraid/corpus/corpus.h"
#include "fuzzeraid/io/store.h"
#include "support/fixtures.h"

namespace fuzzeraid::cli {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;
using Json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fuzzeraid");
  std::ostringstream out, err;
  int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Fixture(const std::string& rel) { return testing::FixturePath(rel).string(); }

// Corpus directory holding the given fixture inputs, ids in order.
fs::path CorpusOf(const std::string& program, const std::vector<std::pair<std::string, std::string>>& inputs) {
  auto p = testing::LoadProgram(program);
  std::vector<triage::CrashRecord> records;
  for (const auto& [id, file] : inputs) {
    auto r = corpus::MakeRecord(p, id, testing::ReadFixtureBytes(file));
    EXPECT_TRUE(r.has_value()) << file;
    records.push_back(*r);
  }
  auto dir = testing::MakeTempDir("cli_corpus");
  io::WriteCorpus(dir, records);
  return dir;
}

fs::path BranchCorpus() {
  return CorpusOf("branch/program.ml-src", {{"a", "branch/crash_a.bin"}, {"b", "branch/crash_b.bin"}});
}

fs::path RecordsCorpus() {
  return CorpusOf("records/program.ml-src", {{"b1c1", "records/bug1_crash1.bin"},
                                          {"b1c2", "records/bug1_crash2.bin"},
                                          {"b2c1", "records/bug2_crash1.bin"}});
}

Json ReadJson(const fs::path& p) { return Json::parse(io::ReadText(p)); }

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

TEST(UsageTest, MissingOrUnknownSubcommandIsAUsageError) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"group", "--program", Fixture("branch/program.ml-src")}).code, kExitUsage);
}

TEST(UsageTest, HelpListsSubcommands) {
  Result r = Invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char* sub : {"explore", "group", "baseline", "report", "validate"}) {
    EXPECT_THAT(r.out, HasSubstr(sub));
  }
}

TEST(UsageTest, BadOptionValues) {
  auto corpus = BranchCorpus();
  for (const char* mode : {"stack:0", "stack:", "stack:x", "aflx"}) {
    EXPECT_EQ(Invoke({"baseline", "--program", Fixture("branch/program.ml-src"), "--corpus",
                      corpus.string(), "--mode", mode})
                  .code,
              kExitUsage)
        << mode;
  }
  EXPECT_EQ(Invoke({"group", "--program", Fixture("branch/program.ml-src"), "--corpus",
                    corpus.string(), "--out", "/tmp/x", "--threshold", "1.5"})
                .code,
            kExitUsage);
}

TEST(UsageTest, MalformedSeedVariable) {
  ScopedEnv env("FUZZERAID_SEED", "12abc");
  Result r = Invoke({"explore", "--program", Fixture("branch/program.ml-src"), "--seed-input",
                     Fixture("branch/crash_a.bin"), "--out", testing::MakeTempDir("e").string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_THAT(r.err, HasSubstr("FUZZERAID_SEED"));
}

TEST(ExploreCliTest, NonCrashingSeedFails) {
  auto dir = testing::MakeTempDir("seed");
  io::WriteText(dir / "ok.bin", "zzz");
  // The record program only crashes on specific records.
  Result r = Invoke({"explore", "--program", Fixture("records/program.ml-src"), "--seed-input",
                     (dir / "ok.bin").string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_THAT(r.err, HasSubstr("does not crash"));
}

TEST(ExploreCliTest, SeedVariableOverridesRng) {
  auto a = testing::MakeTempDir("env_a");
  auto b = testing::MakeTempDir("env_b");
  std::vector<std::string> base = {"explore", "--program", Fixture("suite/markup/program.ml-src"),
                                   "--seed-input", Fixture("suite/markup/seed_2.bin"),
                                   "--iters", "150"};
  auto with_rng = base;
  with_rng.insert(with_rng.end(), {"--rng", "7", "--out", a.string()});
  ASSERT_EQ(Invoke(with_rng).code, kExitOk);
  {
    ScopedEnv env("FUZZERAID_SEED", "7");
    auto with_env = base;
    with_env.insert(with_env.end(), {"--rng", "99", "--out", b.string()});
    ASSERT_EQ(Invoke(with_env).code, kExitOk);
  }
  EXPECT_EQ(io::ReadText(a / "manifest.json"), io::ReadText(b / "manifest.json"));
}

TEST(GroupCliTest, BranchingProgramIsOneGroupButTwoForAfl) {
  auto corpus = BranchCorpus();
  auto out = testing::MakeTempDir("branch");
  Result r = Invoke({"group", "--program", Fixture("branch/program.ml-src"), "--corpus",
                     corpus.string(), "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, HasSubstr("groups: 1\n"));
  EXPECT_EQ(ReadJson(out / "groups.json").size(), 1u);

  Result afl = Invoke({"baseline", "--program", Fixture("branch/program.ml-src"), "--corpus",
                       corpus.string(), "--mode", "afl"});
  ASSERT_EQ(afl.code, kExitOk) << afl.err;
  EXPECT_EQ(Json::parse(afl.out)["group_count"], 2);
}

TEST(GroupCliTest, RecordStreamIsTwoGroups) {
  auto corpus = RecordsCorpus();
  auto out = testing::MakeTempDir("records");
  Result r = Invoke({"group", "--program", Fixture("records/program.ml-src"), "--corpus",
                     corpus.string(), "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  Json groups = ReadJson(out / "groups.json");
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0]["crash_ids"], Json({"b1c1", "b1c2"}));
  EXPECT_EQ(groups[1]["crash_ids"], Json({"b2c1"}));

  Result stack = Invoke({"baseline", "--program", Fixture("records/program.ml-src"), "--corpus",
                         corpus.string(), "--mode", "stack:5"});
  ASSERT_EQ(stack.code, kExitOk);
  Json rep = Json::parse(stack.out);
  bool together = false;
  for (const auto& g : rep["groups"]) {
    std::set<std::string> ids(g["crash_ids"].begin(), g["crash_ids"].end());
    together |= ids.count("b1c1") && ids.count("b2c1");
  }
  EXPECT_TRUE(together);
}

TEST(GroupCliTest, NonCrashingCorpusInputFails) {
  auto p = testing::LoadProgram("branch/program.ml-src");
  auto rec = *corpus::MakeRecord(p, "a", testing::ReadFixtureBytes("branch/crash_a.bin"));
  auto dir = testing::MakeTempDir("badcorpus");
  io::WriteCorpus(dir, {rec});
  // Same ids, but a program that never crashes.
  io::WriteText(dir / "fine.ml-src", "fn main() { int x = input(0); }\n");
  Result r = Invoke({"group", "--program", (dir / "fine.ml-src").string(), "--corpus",
                     dir.string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_THAT(r.err, HasSubstr("does not crash"));
}

// Explored markup corpus grouped once; shared by the tests below.
struct MarkupRun {
  fs::path corpus = testing::MakeTempDir("markup_corpus");
  fs::path out = testing::MakeTempDir("markup_run");
  std::string program = Fixture("suite/markup/program.ml-src");

  MarkupRun() {
    Result e = Invoke({"explore", "--program", program, "--seed-input",
                       Fixture("suite/markup/seed_1.bin"), "--iters", "80", "--rng", "2",
                       "--out", corpus.string()});
    EXPECT_EQ(e.code, kExitOk) << e.err;
    Result g = Invoke({"group", "--program", program, "--corpus", corpus.string(), "--out",
                       out.string()});
    EXPECT_EQ(g.code, kExitOk) << g.err;
  }
};

const MarkupRun& Markup() {
  static const MarkupRun* run = new MarkupRun();
  return *run;
}

TEST(GroupCliTest, GroupsAndMissedPartitionTheCorpus) {
  const auto& m = Markup();
  std::multiset<std::string> seen;
  for (const auto& g : ReadJson(m.out / "groups.json")) {
    for (const auto& id : g["crash_ids"]) seen.insert(id.get<std::string>());
  }
  for (const auto& x : ReadJson(m.out / "missed.json")) seen.insert(x["crash_id"].get<std::string>());
  std::multiset<std::string> all;
  for (const auto& c : ReadJson(m.corpus / "manifest.json")) all.insert(c["id"].get<std::string>());
  EXPECT_EQ(seen, all);
}

TEST(GroupCliTest, SeedSignaturesAbsorbARerun) {
  const auto& m = Markup();
  auto out = testing::MakeTempDir("rerun");
  Result r = Invoke({"group", "--program", m.program, "--corpus", m.corpus.string(), "--out",
                     out.string(), "--seed-signatures", (m.out / "signatures").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, HasSubstr("(0 new)"));
  EXPECT_EQ(ReadJson(out / "groups.json"), ReadJson(m.out / "groups.json"));
}

TEST(ValidateCliTest, FreshStoreIsValidAndTamperingIsCaught) {
  const auto& m = Markup();
  Result ok = Invoke({"validate", "--store", (m.out / "signatures").string(), "--program",
                      m.program, "--corpus", m.corpus.string()});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_THAT(ok.out, HasSubstr("signatures valid"));

  auto store = testing::MakeTempDir("tampered");
  fs::copy(m.out / "signatures", store, fs::copy_options::recursive);
  io::WriteText(store / "sig_0001.ml-src", "fn main() { int x = 0; }\n");
  Result bad = Invoke({"validate", "--store", store.string(), "--program", m.program,
                       "--corpus", m.corpus.string()});
  EXPECT_EQ(bad.code, kExitFailure);
  EXPECT_THAT(bad.err, HasSubstr("sig 0001"));
}

TEST(ReportCliTest, LabelThenReportInBothFormats) {
  const auto& m = Markup();
  auto dir = testing::MakeTempDir("report");
  Result l = Invoke({"label", "--program", m.program, "--corpus", m.corpus.string(), "--patch",
                     "markup-1=" + Fixture("suite/markup/patch_1.ml-src"), "--patch",
                     "markup-2=" + Fixture("suite/markup/patch_2.ml-src"), "--out",
                     (dir / "labels.json").string()});
  ASSERT_EQ(l.code, kExitOk) << l.err;
  EXPECT_THAT(l.out, HasSubstr("labeled"));

  Result json = Invoke({"report", "--run", m.out.string(), "--labels",
                        (dir / "labels.json").string()});
  Result csv = Invoke({"report", "--run", m.out.string(), "--labels",
                       (dir / "labels.json").string(), "--format", "csv"});
  ASSERT_EQ(json.code, kExitOk) << json.err;
  ASSERT_EQ(csv.code, kExitOk) << csv.err;

  Json total = Json::parse(json.out)["total"];
  std::string expected = "total," + std::to_string(total["crashes"].get<int>()) + "," +
                         std::to_string(total["fault_sigs"].get<int>()) + "," +
                         std::to_string(total["groups"].get<int>()) + "," +
                         std::to_string(total["correct"].get<int>()) + "," +
                         std::to_string(total["incorrect"].get<int>()) + "," +
                         std::to_string(total["missed"].get<int>()) + "\n";
  EXPECT_THAT(csv.out, HasSubstr(expected));
}

TEST(LabelCliTest, MalformedPatchSpecIsUsage) {
  const auto& m = Markup();
  Result r = Invoke({"label", "--program", m.program, "--corpus", m.corpus.string(), "--patch",
                     "nofile", "--out", "/tmp/never.json"});
  EXPECT_EQ(r.code, kExitUsage);
}

}  // namespace
}  // namespace fuzzeraid::cli
