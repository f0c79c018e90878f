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

#ifndef FUZZERAID_TRIAGE_TRIAGE_H_
#define FUZZERAID_TRIAGE_TRIAGE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/minilang/interpreter.h"
#include "fuzzeraid/siggen/signature.h"

namespace fuzzeraid::triage {

struct CrashRecord {
  std::string id;
  Bytes input;
  minilang::FailureFingerprint original_fingerprint;
  std::optional<std::string> label;  // ground truth bug id, when known
};

struct TriageConfig {
  double threshold = 0.7;
  std::size_t step_budget = minilang::kDefaultStepBudget;
  // Attempts per signature. The interpreter is deterministic, so only the
  // first attempt can decide; kept so the knob has a home.
  int retries = 10;
  std::size_t max_oracle_runs = 10'000;
};

// Matches inputs against signatures in insertion order. Signature programs
// are compiled once.
class Classifier {
 public:
  explicit Classifier(const TriageConfig& config);
  ~Classifier();
  Classifier(Classifier&&) noexcept;
  Classifier& operator=(Classifier&&) noexcept;

  void Add(const siggen::FaultSignature& signature);
  std::size_t size() const;

  // Index of the first signature that fails on `input` exactly as it does on
  // its origin crash. Budget exhaustion is a non-match.
  std::optional<std::size_t> Classify(const Bytes& input) const;

 private:
  struct Entry;
  TriageConfig config_;
  std::vector<Entry> entries_;
};

// Id of the matching signature, or nullopt.
std::optional<std::string> Classify(const CrashRecord& crash,
                                    const std::vector<siggen::FaultSignature>& signatures,
                                    const TriageConfig& config);

struct MissedCrash {
  std::string crash_id;
  std::string reason;
};

struct GroupingResult {
  std::vector<siggen::FaultSignature> signatures;
  std::vector<MissedCrash> missed;
  std::size_t generated = 0;  // signatures created by this call
};

// Walks `corpus` in order. Each crash joins the first signature that
// reproduces it or seeds a new one; crashes whose signature cannot be built
// (after one retry) are reported as missed. New ids are four-digit counters
// following the seeds.
GroupingResult GroupCrashes(const std::vector<CrashRecord>& corpus,
                            std::vector<siggen::FaultSignature> seed_signatures,
                            const minilang::Program& original, const TriageConfig& config);

struct FaultGroup {
  std::string id;
  std::vector<std::string> signature_ids;
  std::vector<std::string> members;  // crash ids, signature order
};

// Greedy clustering: the first unassigned signature seeds a group and pulls
// in every remaining signature scoring at least the threshold against it.
// Membership is relative to the seed, so it is not transitive.
std::vector<FaultGroup> MergeGroups(const std::vector<siggen::FaultSignature>& signatures,
                                    const TriageConfig& config);

// Zero-padded four-digit id, e.g. 7 -> "0007".
std::string FormatId(std::size_t n);

}  // namespace fuzzeraid::triage

#endif  // FUZZERAID_TRIAGE_TRIAGE_H_
