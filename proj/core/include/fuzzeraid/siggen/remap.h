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

#ifndef FUZZERAID_SIGGEN_REMAP_H_
#define FUZZERAID_SIGGEN_REMAP_H_

#include <string>
#include <utility>
#include <vector>

#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/minilang/interpreter.h"

namespace fuzzeraid::siggen {

// A fingerprint expressed through statement identities instead of lines, so
// it can be compared across edits of the same program.
struct CrashIdentity {
  minilang::FailureKind kind = minilang::FailureKind::kNullDeref;
  std::vector<std::pair<std::string, minilang::NodeId>> frames;  // outermost first

  bool operator==(const CrashIdentity&) const = default;
};

// Throws Error(kUnmappableFrame) when a frame does not name a statement of
// `program`.
CrashIdentity Identify(const minilang::FailureFingerprint& fp,
                       const minilang::Program& program);

// Identity of a crashed outcome. Requires outcome.crashed().
CrashIdentity Identify(const minilang::ExecutionOutcome& outcome);

// Re-expresses `fp`, given in `from`'s canonical lines, in `to`'s lines.
// Throws Error(kUnmappableFrame) if a frame's function or statement is gone.
minilang::FailureFingerprint RemapFingerprint(const minilang::FailureFingerprint& fp,
                                              const minilang::Program& from,
                                              const minilang::Program& to);

}  // namespace fuzzeraid::siggen

#endif  // FUZZERAID_SIGGEN_REMAP_H_
