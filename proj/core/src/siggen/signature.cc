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

#include "fuzzeraid/siggen/signature.h"

#include <algorithm>
#include <set>

#include "fuzzeraid/minilang/render.h"
#include "fuzzeraid/siggen/reduce.h"
#include "fuzzeraid/siggen/remap.h"
#include "fuzzeraid/siggen/slice.h"

namespace fuzzeraid::siggen {

bool FaultSignature::HasMember(const std::string& crash_id) const {
  return std::find(members.begin(), members.end(), crash_id) != members.end();
}

void FaultSignature::AddMember(const std::string& crash_id) {
  if (!HasMember(crash_id)) members.push_back(crash_id);
}

FaultSignature GenerateSignature(const minilang::Program& original, const Bytes& crash_input,
                                 const SignatureConfig& config, std::string id,
                                 std::string origin_crash) {
  minilang::ExecutionOutcome outcome =
      minilang::Execute(original, crash_input, config.step_budget);
  if (!outcome.crashed()) {
    throw Error(ErrorCode::kNotACrash, "input does not crash the program");
  }
  minilang::Program slice = SliceProgram(original, outcome.trace);
  VerifySlice(original, slice, crash_input, config.step_budget);

  ReduceOptions options;
  options.step_budget = config.step_budget;
  options.max_oracle_runs = config.max_oracle_runs;
  minilang::FailureFingerprint target =
      RemapFingerprint(*outcome.fingerprint, original, slice);
  ReduceResult reduced = Reduce(slice, crash_input, target, options);

  minilang::ExecutionOutcome check =
      minilang::Execute(reduced.program, crash_input, config.step_budget);
  if (!check.crashed()) {
    throw Error(ErrorCode::kNotReproducing, "reduced program lost the failure");
  }

  FaultSignature sig;
  sig.id = std::move(id);
  sig.program = std::move(reduced.program);
  sig.reference_fingerprint = *check.fingerprint;
  sig.members.push_back(origin_crash);
  sig.origin_crash = std::move(origin_crash);
  sig.minimal = reduced.minimal;
  sig.oracle_runs = reduced.oracle_runs;
  return sig;
}

std::vector<std::string> CheckSignature(const FaultSignature& sig,
                                        const minilang::Program& original,
                                        const Bytes& origin_input, std::size_t step_budget) {
  std::vector<std::string> problems;
  if (sig.members.empty() || sig.members.front() != sig.origin_crash) {
    problems.push_back("origin crash is not the first member");
  }
  if (std::set<std::string>(sig.members.begin(), sig.members.end()).size() != sig.members.size()) {
    problems.push_back("duplicate members");
  }
  minilang::ExecutionOutcome source = minilang::Execute(original, origin_input, step_budget);
  if (!source.crashed()) {
    problems.push_back("origin input does not crash the original program");
    return problems;
  }
  minilang::ExecutionOutcome own = minilang::Execute(sig.program, origin_input, step_budget);
  if (!own.crashed() || *own.fingerprint != sig.reference_fingerprint) {
    problems.push_back("does not reproduce its reference failure");
    return problems;
  }
  const auto& want = *source.fingerprint;
  bool same_chain = want.kind == sig.reference_fingerprint.kind &&
                    want.stack.size() == sig.reference_fingerprint.stack.size();
  for (std::size_t i = 0; same_chain && i < want.stack.size(); ++i) {
    same_chain = want.stack[i].function == sig.reference_fingerprint.stack[i].function;
  }
  if (!same_chain) problems.push_back("failure kind or call chain differs from the original");
  if (sig.minimal &&
      !OneMinimalityViolations(sig.program, origin_input, sig.reference_fingerprint, step_budget)
           .empty()) {
    problems.push_back("claims to be minimal but a single deletion still reproduces");
  }
  minilang::Program slice = SliceProgram(original, source.trace);
  if (minilang::RenderLines(sig.program).size() > minilang::RenderLines(slice).size()) {
    problems.push_back("longer than the slice it was reduced from");
  }
  return problems;
}

}  // namespace fuzzeraid::siggen
