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

#ifndef FUZZERAID_SIGGEN_REDUCE_H_
#define FUZZERAID_SIGGEN_REDUCE_H_

#include <cstddef>
#include <vector>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/minilang/edit.h"
#include "fuzzeraid/minilang/interpreter.h"

namespace fuzzeraid::siggen {

struct ReduceOptions {
  std::size_t step_budget = minilang::kDefaultStepBudget;
  std::size_t max_oracle_runs = 10'000;
};

struct ReduceResult {
  minilang::Program program;
  bool minimal = true;          // false when the oracle budget ran out
  std::size_t oracle_runs = 0;  // distinct executions, including the initial check
  std::size_t passes = 0;       // delta-debugging rounds until a fixpoint
};

// Delta debugging over DeletionCandidates(), recomputed after every accepted
// step, until no single deletion keeps the failure. `target` is in
// `candidate`'s own lines. Throws Error(kNotReproducing) if `candidate` does
// not fail with `target` on `input`.
ReduceResult Reduce(const minilang::Program& candidate, const Bytes& input,
                    const minilang::FailureFingerprint& target,
                    const ReduceOptions& options = {});

// Single deletions of `program` that still reproduce `reference` on `input`.
// Empty means the program is 1-minimal.
std::vector<minilang::Deletion> OneMinimalityViolations(
    const minilang::Program& program, const Bytes& input,
    const minilang::FailureFingerprint& reference,
    std::size_t step_budget = minilang::kDefaultStepBudget);

}  // namespace fuzzeraid::siggen

#endif  // FUZZERAID_SIGGEN_REDUCE_H_
