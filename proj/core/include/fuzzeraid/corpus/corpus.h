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

#ifndef FUZZERAID_CORPUS_CORPUS_H_
#define FUZZERAID_CORPUS_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/minilang/interpreter.h"
#include "fuzzeraid/siggen/signature.h"
#include "fuzzeraid/triage/triage.h"

namespace fuzzeraid::corpus {

struct ExploreOptions {
  std::size_t iterations = 1000;
  std::uint64_t rng_seed = 0;
  std::size_t step_budget = minilang::kDefaultStepBudget;
  std::size_t max_input_size = 64;
  std::string id_prefix;  // crash ids are <prefix><four digits>
};

// Crash exploration: mutates queue entries and keeps every crashing mutant.
// Mutants that reach new bucketed edges join the queue. The seed comes first
// in the result; inputs are unique. Throws Error(kSeedNotCrashing).
std::vector<triage::CrashRecord> Explore(const minilang::Program& original, const Bytes& seed,
                                         const ExploreOptions& options);

// Record for an input that crashes `original`, or nullopt.
std::optional<triage::CrashRecord> MakeRecord(const minilang::Program& original, std::string id,
                                              const Bytes& input,
                                              std::size_t step_budget = minilang::kDefaultStepBudget);

struct GroundTruthLabel {
  std::string crash_id;
  std::optional<std::string> bug;    // nullopt means unknown
  std::vector<std::string> fixed_by;  // every patch that removes the crash
};

// A crash belongs to bug b when b's patch is the only one that makes it stop
// crashing. Patches are whole programs keyed by bug id.
std::vector<GroundTruthLabel> LabelWithPatches(
    const std::vector<triage::CrashRecord>& corpus, const minilang::Program& original,
    const std::map<std::string, minilang::Program>& patches,
    std::size_t step_budget = minilang::kDefaultStepBudget);

// Corpus positions kept when every label (unknown is one more bucket) is
// limited to `cap` crashes. Picks by an rng-seeded shuffle; the result is in
// corpus order.
std::vector<std::size_t> CapPerBug(const std::vector<GroundTruthLabel>& labels, std::size_t cap,
                                   std::uint64_t rng_seed);

struct BugMetrics {
  std::string bug;
  std::size_t crashes = 0;
  std::size_t fault_sigs = 0;
  std::size_t groups = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t missed = 0;
};

struct Metrics {
  std::vector<BugMetrics> bugs;  // ordered by bug id
  BugMetrics totals;             // bug == "total"
  std::size_t unknown = 0;       // crashes without a bug label
  std::size_t unattributed_groups = 0;
};

// Groups and signatures are attributed to the majority label among their
// labeled members, ties to the lower bug id. Throws Error(kLabelMissing) if a
// grouped or missed crash has no label entry.
Metrics Score(const std::vector<triage::FaultGroup>& groups,
              const std::vector<siggen::FaultSignature>& signatures,
              const std::vector<GroundTruthLabel>& labels,
              const std::vector<std::string>& missed);

// Concatenates per-program metrics. Rows with the same bug id are summed.
Metrics Combine(const std::vector<Metrics>& parts);

}  // namespace fuzzeraid::corpus

#endif  // FUZZERAID_CORPUS_CORPUS_H_
