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

#include "fuzzeraid/baselines/baselines.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/coverage.h"

namespace fuzzeraid::baselines {
namespace {

using minilang::BucketedEdge;

// Groups records by a key, in order of first appearance.
template <typename Key, typename KeyFn>
std::vector<DedupGroup> GroupByKey(const std::vector<triage::CrashRecord>& corpus, KeyFn key_of) {
  std::map<Key, std::size_t> index;
  std::vector<DedupGroup> groups;
  for (const auto& crash : corpus) {
    auto [it, fresh] = index.emplace(key_of(crash), groups.size());
    if (fresh) groups.push_back({crash.id, {}});
    groups[it->second].members.push_back(crash.id);
  }
  return groups;
}

std::vector<std::string> InnermostNames(const minilang::CallStack& stack, std::size_t n) {
  std::size_t take = std::min(n, stack.size());
  std::vector<std::string> names;
  for (std::size_t i = stack.size() - take; i < stack.size(); ++i) {
    names.push_back(stack[i].function);
  }
  return names;
}

DedupReport Finish(std::string strategy, std::vector<DedupGroup> groups) {
  DedupReport report;
  report.strategy = std::move(strategy);
  report.groups = std::move(groups);
  report.group_count = report.groups.size();
  return report;
}

}  // namespace

DedupReport DedupCoverage(const std::vector<triage::CrashRecord>& corpus,
                          const minilang::Program& original, const CoverageConfig& config) {
  minilang::CompileResult compiled = minilang::Compile(original);
  if (!compiled.ok()) throw Error(ErrorCode::kInvalidProgram, compiled.message);
  minilang::ExecuteOptions options;
  options.step_budget = config.step_budget;

  std::vector<std::set<BucketedEdge>> cover;
  cover.reserve(corpus.size());
  for (const auto& crash : corpus) {
    cover.push_back(
        minilang::BucketEdges(minilang::Execute(*compiled.program, crash.input, options).edges));
  }

  // Greedy cover: most new points first, ties to the lower id.
  std::set<BucketedEdge> covered;
  std::vector<std::size_t> reps;
  std::vector<bool> selected(corpus.size(), false);
  for (;;) {
    std::size_t best = corpus.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (selected[i]) continue;
      std::size_t gain = 0;
      for (const auto& point : cover[i]) gain += covered.count(point) == 0 ? 1 : 0;
      if (gain == 0) continue;
      if (gain > best_gain || (gain == best_gain && corpus[i].id < corpus[best].id)) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == corpus.size()) break;
    selected[best] = true;
    reps.push_back(best);
    covered.insert(cover[best].begin(), cover[best].end());
  }

  std::vector<DedupGroup> groups;
  for (std::size_t r : reps) groups.push_back({corpus[r].id, {corpus[r].id}});
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (selected[i]) continue;
    bool placed = false;
    for (std::size_t g = 0; g < reps.size() && !placed; ++g) {
      const auto& rep = cover[reps[g]];
      if (std::includes(rep.begin(), rep.end(), cover[i].begin(), cover[i].end())) {
        groups[g].members.push_back(corpus[i].id);
        placed = true;
      }
    }
    if (!placed) groups.push_back({corpus[i].id, {corpus[i].id}});
  }
  return Finish("afl", std::move(groups));
}

DedupReport DedupStackHash(const std::vector<triage::CrashRecord>& corpus, std::size_t n_frames) {
  if (n_frames == 0) throw Error(ErrorCode::kFormatError, "stack depth must be at least 1");
  auto groups = GroupByKey<std::vector<std::string>>(corpus, [&](const triage::CrashRecord& c) {
    return InnermostNames(c.original_fingerprint.stack, n_frames);
  });
  return Finish("stack:" + std::to_string(n_frames), std::move(groups));
}

DedupReport DedupCrashSite(const std::vector<triage::CrashRecord>& corpus) {
  using Key = std::tuple<minilang::FailureKind, minilang::SourceLocation, std::vector<std::string>>;
  auto groups = GroupByKey<Key>(corpus, [](const triage::CrashRecord& c) {
    const auto& fp = c.original_fingerprint;
    return Key{fp.kind, fp.location, InnermostNames(fp.stack, kCrashSiteFrames)};
  });
  return Finish("site", std::move(groups));
}

}  // namespace fuzzeraid::baselines
