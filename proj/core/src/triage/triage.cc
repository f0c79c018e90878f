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

#include "fuzzeraid/triage/triage.h"

#include <cstdio>
#include <set>
#include <utility>

#include "fuzzeraid/triage/similarity.h"

namespace fuzzeraid::triage {

struct Classifier::Entry {
  std::shared_ptr<const minilang::CompiledProgram> program;
  minilang::FailureFingerprint reference;
};

Classifier::Classifier(const TriageConfig& config) : config_(config) {}
Classifier::~Classifier() = default;
Classifier::Classifier(Classifier&&) noexcept = default;
Classifier& Classifier::operator=(Classifier&&) noexcept = default;

void Classifier::Add(const siggen::FaultSignature& signature) {
  minilang::CompileResult compiled = minilang::Compile(signature.program);
  // A signature that no longer compiles can never match; keep the slot so
  // indices stay aligned with the caller's list.
  entries_.push_back(Entry{compiled.program, signature.reference_fingerprint});
}

std::size_t Classifier::size() const { return entries_.size(); }

std::optional<std::size_t> Classifier::Classify(const Bytes& input) const {
  minilang::ExecuteOptions options;
  options.step_budget = config_.step_budget;
  options.record_coverage = false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (e.program == nullptr) continue;
    // Execution is deterministic: a second attempt would see the same result.
    minilang::ExecutionOutcome out = minilang::Execute(*e.program, input, options);
    if (out.crashed() && *out.fingerprint == e.reference) return i;
  }
  return std::nullopt;
}

std::optional<std::string> Classify(const CrashRecord& crash,
                                    const std::vector<siggen::FaultSignature>& signatures,
                                    const TriageConfig& config) {
  Classifier classifier(config);
  for (const auto& sig : signatures) classifier.Add(sig);
  std::optional<std::size_t> hit = classifier.Classify(crash.input);
  if (!hit) return std::nullopt;
  return signatures[*hit].id;
}

std::string FormatId(std::size_t n) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04zu", n);
  return buf;
}

GroupingResult GroupCrashes(const std::vector<CrashRecord>& corpus,
                            std::vector<siggen::FaultSignature> seed_signatures,
                            const minilang::Program& original, const TriageConfig& config) {
  GroupingResult result;
  result.signatures = std::move(seed_signatures);
  Classifier classifier(config);
  std::set<std::string> used_ids;
  for (const auto& sig : result.signatures) {
    classifier.Add(sig);
    used_ids.insert(sig.id);
  }
  std::size_t counter = result.signatures.size();
  auto next_id = [&] {
    std::string id;
    do {
      id = FormatId(++counter);
    } while (used_ids.count(id) != 0);
    used_ids.insert(id);
    return id;
  };

  siggen::SignatureConfig sig_config;
  sig_config.step_budget = config.step_budget;
  sig_config.max_oracle_runs = config.max_oracle_runs;

  for (const auto& crash : corpus) {
    if (auto hit = classifier.Classify(crash.input)) {
      result.signatures[*hit].AddMember(crash.id);
      continue;
    }
    std::optional<siggen::FaultSignature> sig;
    std::string reason;
    for (int attempt = 0; attempt < 2 && !sig; ++attempt) {
      try {
        sig = siggen::GenerateSignature(original, crash.input, sig_config, "", crash.id);
      } catch (const Error& e) {
        reason = e.what();
      }
    }
    if (!sig) {
      result.missed.push_back({crash.id, reason});
      continue;
    }
    sig->id = next_id();
    classifier.Add(*sig);
    result.signatures.push_back(std::move(*sig));
    ++result.generated;
  }
  return result;
}

std::vector<FaultGroup> MergeGroups(const std::vector<siggen::FaultSignature>& signatures,
                                    const TriageConfig& config) {
  std::vector<const siggen::FaultSignature*> worklist;
  for (const auto& sig : signatures) worklist.push_back(&sig);
  std::vector<FaultGroup> groups;
  std::size_t pos = 0;
  std::vector<bool> taken(worklist.size(), false);
  while (pos < worklist.size()) {
    if (taken[pos]) {
      ++pos;
      continue;
    }
    const siggen::FaultSignature& seed = *worklist[pos];
    taken[pos] = true;
    FaultGroup group;
    group.id = FormatId(groups.size() + 1);
    std::vector<const siggen::FaultSignature*> in_group{&seed};
    for (std::size_t j = pos + 1; j < worklist.size(); ++j) {
      if (taken[j]) continue;
      if (SimilarityScore(seed, *worklist[j]) >= config.threshold) {
        taken[j] = true;
        in_group.push_back(worklist[j]);
      }
    }
    for (const auto* sig : in_group) {
      group.signature_ids.push_back(sig->id);
      group.members.insert(group.members.end(), sig->members.begin(), sig->members.end());
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace fuzzeraid::triage
