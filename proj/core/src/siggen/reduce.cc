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

#include "fuzzeraid/siggen/reduce.h"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>

#include "fuzzeraid/minilang/render.h"
#include "fuzzeraid/siggen/remap.h"

namespace fuzzeraid::siggen {

using minilang::Deletion;
using minilang::Program;

namespace {

class CrashOracle {
 public:
  CrashOracle(const Bytes& input, CrashIdentity target, std::size_t step_budget)
      : input_(input), target_(std::move(target)) {
    options_.step_budget = step_budget;
    options_.record_coverage = false;
  }

  // Cached by canonical text plus statement identities: the same text can
  // come from different branches. Programs that do not compile never
  // reproduce.
  bool Reproduces(const Program& program) {
    std::string key = minilang::RenderWithIds(program);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    bool verdict = false;
    minilang::CompileResult compiled = minilang::Compile(program);
    if (compiled.ok()) {
      ++runs_;
      minilang::ExecutionOutcome out = minilang::Execute(*compiled.program, input_, options_);
      verdict = out.crashed() && Identify(out) == target_;
    }
    cache_.emplace(std::move(key), verdict);
    return verdict;
  }

  std::size_t runs() const { return runs_; }

 private:
  const Bytes& input_;
  CrashIdentity target_;
  minilang::ExecuteOptions options_;
  std::unordered_map<std::string, bool> cache_;
  std::size_t runs_ = 0;
};

std::vector<std::vector<Deletion>> Split(const std::vector<Deletion>& items, std::size_t n) {
  std::vector<std::vector<Deletion>> chunks;
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t end = start + (items.size() - start) / (n - i);
    chunks.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(start),
                        items.begin() + static_cast<std::ptrdiff_t>(end));
    start = end;
  }
  return chunks;
}

class Reducer {
 public:
  Reducer(CrashOracle& oracle, std::size_t max_runs) : oracle_(oracle), max_runs_(max_runs) {}

  bool exhausted() const { return exhausted_; }

  // One ddmin run over the current candidate list. Returns true on progress.
  bool Ddmin(Program& current) {
    bool progress = false;
    std::size_t n = 2;
    while (!exhausted_) {
      std::vector<Deletion> all = minilang::DeletionCandidates(current);
      if (all.empty()) break;
      n = std::min(n, all.size());
      auto chunks = Split(all, n);
      bool found = false;
      // Keep only one chunk's worth of candidates (apply all the others).
      for (std::size_t i = 0; i < chunks.size() && !found && n > 1; ++i) {
        std::vector<Deletion> rest;
        for (std::size_t j = 0; j < chunks.size(); ++j) {
          if (j != i) rest.insert(rest.end(), chunks[j].begin(), chunks[j].end());
        }
        if (Try(current, rest)) {
          n = 2;
          found = true;
        }
      }
      // Apply one chunk. With two chunks this was covered above.
      for (std::size_t i = 0; i < chunks.size() && !found && (n > 2 || all.size() == 1);
           ++i) {
        if (Try(current, chunks[i])) {
          n = std::max<std::size_t>(n - 1, 2);
          found = true;
        }
      }
      if (found) {
        progress = true;
        continue;
      }
      if (n >= all.size()) break;
      n = std::min(n * 2, all.size());
    }
    return progress;
  }

 private:
  bool Try(Program& current, const std::vector<Deletion>& deletions) {
    if (oracle_.runs() >= max_runs_) {
      exhausted_ = true;
      return false;
    }
    std::optional<Program> candidate = minilang::ApplyDeletions(current, deletions);
    if (!candidate || !oracle_.Reproduces(*candidate)) return false;
    current = std::move(*candidate);
    return true;
  }

  CrashOracle& oracle_;
  std::size_t max_runs_;
  bool exhausted_ = false;
};

}  // namespace

ReduceResult Reduce(const Program& candidate, const Bytes& input,
                    const minilang::FailureFingerprint& target,
                    const ReduceOptions& options) {
  CrashIdentity identity;
  try {
    identity = Identify(target, candidate);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNotReproducing, e.what());
  }
  CrashOracle oracle(input, identity, options.step_budget);
  if (!oracle.Reproduces(candidate)) {
    throw Error(ErrorCode::kNotReproducing,
                "candidate does not reproduce " + minilang::DebugString(target));
  }

  ReduceResult result;
  result.program = candidate;
  // Unreachable functions go first; ApplyDeletions prunes.
  if (auto pruned = minilang::ApplyDeletions(candidate, {});
      pruned && oracle.Reproduces(*pruned)) {
    result.program = std::move(*pruned);
  }

  Reducer reducer(oracle, std::max<std::size_t>(options.max_oracle_runs, 1));
  while (true) {
    ++result.passes;
    if (!reducer.Ddmin(result.program) || reducer.exhausted()) break;
  }
  result.minimal = !reducer.exhausted();
  result.oracle_runs = oracle.runs();
  return result;
}

std::vector<Deletion> OneMinimalityViolations(const Program& program, const Bytes& input,
                                              const minilang::FailureFingerprint& reference,
                                              std::size_t step_budget) {
  CrashOracle oracle(input, Identify(reference, program), step_budget);
  std::vector<Deletion> violations;
  for (const auto& d : minilang::DeletionCandidates(program)) {
    std::optional<Program> candidate = minilang::ApplyDeletions(program, {d});
    if (candidate && oracle.Reproduces(*candidate)) violations.push_back(d);
  }
  return violations;
}

}  // namespace fuzzeraid::siggen
