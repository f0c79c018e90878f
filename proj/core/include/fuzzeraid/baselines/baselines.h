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

#ifndef FUZZERAID_BASELINES_BASELINES_H_
#define FUZZERAID_BASELINES_BASELINES_H_

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/minilang/interpreter.h"
#include "fuzzeraid/triage/triage.h"

namespace fuzzeraid::baselines {

struct DedupGroup {
  std::string representative;
  std::vector<std::string> members;  // representative first
};

struct DedupReport {
  std::string strategy;  // "afl", "stack:N" or "site"
  std::vector<DedupGroup> groups;
  std::size_t group_count = 0;
};

struct CoverageConfig {
  std::size_t step_budget = minilang::kDefaultStepBudget;
};

// afl-cmin style: greedy cover of bucketed edge coverage. Each selected crash
// represents the crashes whose coverage it contains.
DedupReport DedupCoverage(const std::vector<triage::CrashRecord>& corpus,
                          const minilang::Program& original, const CoverageConfig& config = {});

// Groups by the function names of the innermost `n_frames` frames of each
// record's original fingerprint. Requires n_frames >= 1.
DedupReport DedupStackHash(const std::vector<triage::CrashRecord>& corpus, std::size_t n_frames);

// Groups by failure kind, failure location and the innermost seven frame
// names, in the spirit of a fault address plus PC plus backtrace key.
DedupReport DedupCrashSite(const std::vector<triage::CrashRecord>& corpus);

inline constexpr std::size_t kCrashSiteFrames = 7;

}  // namespace fuzzeraid::baselines

#endif  // FUZZERAID_BASELINES_BASELINES_H_
