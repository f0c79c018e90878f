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

#ifndef FUZZERAID_SIGGEN_SIGNATURE_H_
#define FUZZERAID_SIGGEN_SIGNATURE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/minilang/interpreter.h"

namespace fuzzeraid::siggen {

// A reduced program that reproduces one crash, plus the crashes it explains.
struct FaultSignature {
  std::string id;
  minilang::Program program;
  std::string origin_crash;
  // Outcome of running the origin input on `program` (its own line numbers).
  minilang::FailureFingerprint reference_fingerprint;
  std::vector<std::string> members;  // origin first, then in classification order
  bool minimal = true;
  std::size_t oracle_runs = 0;

  bool HasMember(const std::string& crash_id) const;
  void AddMember(const std::string& crash_id);
};

struct SignatureConfig {
  std::size_t step_budget = minilang::kDefaultStepBudget;
  std::size_t max_oracle_runs = 10'000;
};

// execute -> slice -> reduce. Throws Error with kNotACrash when the input
// does not crash `original`, kSliceNotReproducing or kNotReproducing when a
// stage loses the failure.
FaultSignature GenerateSignature(const minilang::Program& original,
                                 const Bytes& crash_input,
                                 const SignatureConfig& config, std::string id,
                                 std::string origin_crash);

// Problems with a stored signature, empty when it holds up: it must fail on
// its origin input with `reference_fingerprint`, list the origin first with
// unique members, be 1-minimal when it claims to be, be no longer than the
// slice of `original`, and keep the original failure kind and function chain.
std::vector<std::string> CheckSignature(const FaultSignature& sig,
                                        const minilang::Program& original,
                                        const Bytes& origin_input,
                                        std::size_t step_budget = minilang::kDefaultStepBudget);

}  // namespace fuzzeraid::siggen

#endif  // FUZZERAID_SIGGEN_SIGNATURE_H_
