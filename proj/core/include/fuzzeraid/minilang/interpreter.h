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

#ifndef FUZZERAID_MINILANG_INTERPRETER_H_
#define FUZZERAID_MINILANG_INTERPRETER_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/ast.h"

namespace fuzzeraid::minilang {

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

enum class FailureKind {
  kNullDeref,
  kUseAfterFree,
  kDivByZero,
  kOutOfBounds,
  kAssertFail,
};

std::string_view FailureKindName(FailureKind kind);
std::optional<FailureKind> ParseFailureKind(std::string_view name);

struct SourceLocation {
  std::string function;
  int line = 0;

  auto operator<=>(const SourceLocation&) const = default;
};

// One call-stack frame: the function and the line it is currently executing
// (the call site for every frame but the innermost).
struct StackFrame {
  std::string function;
  int line = 0;

  auto operator<=>(const StackFrame&) const = default;
};

// Outermost frame first.
using CallStack = std::vector<StackFrame>;

struct FailureFingerprint {
  FailureKind kind = FailureKind::kNullDeref;
  SourceLocation location;
  CallStack stack;

  bool operator==(const FailureFingerprint&) const = default;
};

struct FailureFingerprintHash {
  std::size_t operator()(const FailureFingerprint& fp) const;
};

std::string DebugString(const FailureFingerprint& fp);

// Compact statement identity: function index into Program::functions and
// the 1-based canonical line within that function.
struct StatementId {
  std::uint16_t function = 0;
  std::uint16_t line = 0;

  auto operator<=>(const StatementId&) const = default;
};

using Edge = std::pair<StatementId, StatementId>;
using EdgeCounts = std::map<Edge, std::uint64_t>;

enum class ExecutionStatus { kCompleted, kCrashed, kBudgetExhausted };

struct ExecutionOutcome {
  ExecutionStatus status = ExecutionStatus::kCompleted;
  std::size_t steps = 0;
  std::optional<FailureFingerprint> fingerprint;  // set iff kCrashed
  // Statement being executed in each frame at the crash, outermost first.
  // Parallel to fingerprint->stack.
  std::vector<NodeId> crash_nodes;
  std::vector<StatementId> trace;
  EdgeCounts edges;

  bool crashed() const { return status == ExecutionStatus::kCrashed; }
};

// Statically checked, executable form of a Program.
class CompiledProgram;

struct CompileResult {
  std::shared_ptr<const CompiledProgram> program;  // null on failure
  std::vector<NodeId> offending;                   // statements/globals at fault
  std::string message;                             // first problem found

  bool ok() const { return program != nullptr; }
};

// Resolves names, call targets and arities. Never throws.
CompileResult Compile(const Program& program);

struct ExecuteOptions {
  std::size_t step_budget = kDefaultStepBudget;
  // Trace and edge recording can be skipped when only the status matters.
  bool record_coverage = true;
};

ExecutionOutcome Execute(const CompiledProgram& program, const Bytes& input,
                         const ExecuteOptions& options = {});

// Compiles and executes. Throws Error(kMissingMain) or Error(kInvalidProgram).
ExecutionOutcome Execute(const Program& program, const Bytes& input,
                         std::size_t step_budget = kDefaultStepBudget);

}  // namespace fuzzeraid::minilang

#endif  // FUZZERAID_MINILANG_INTERPRETER_H_
