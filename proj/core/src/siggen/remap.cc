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

#include "fuzzeraid/siggen/remap.h"

#include "fuzzeraid/common/error.h"
#include "fuzzeraid/minilang/render.h"

namespace fuzzeraid::siggen {

using minilang::FailureFingerprint;
using minilang::LineMap;
using minilang::Program;

CrashIdentity Identify(const FailureFingerprint& fp, const Program& program) {
  LineMap lines(program);
  CrashIdentity id;
  id.kind = fp.kind;
  for (const auto& frame : fp.stack) {
    int f = program.FunctionIndex(frame.function);
    auto node = lines.NodeAt(f, frame.line);
    if (!node) {
      throw Error(ErrorCode::kUnmappableFrame,
                  "no statement at " + frame.function + ":" + std::to_string(frame.line));
    }
    id.frames.emplace_back(frame.function, *node);
  }
  return id;
}

CrashIdentity Identify(const minilang::ExecutionOutcome& outcome) {
  CrashIdentity id;
  id.kind = outcome.fingerprint->kind;
  for (std::size_t i = 0; i < outcome.crash_nodes.size(); ++i) {
    id.frames.emplace_back(outcome.fingerprint->stack[i].function, outcome.crash_nodes[i]);
  }
  return id;
}

FailureFingerprint RemapFingerprint(const FailureFingerprint& fp, const Program& from,
                                    const Program& to) {
  CrashIdentity id = Identify(fp, from);
  LineMap lines(to);
  FailureFingerprint out;
  out.kind = fp.kind;
  for (const auto& [function, node] : id.frames) {
    int f = to.FunctionIndex(function);
    if (f < 0) {
      throw Error(ErrorCode::kUnmappableFrame, "function '" + function + "' was removed");
    }
    LineMap::Position pos = lines.Find(node);
    if (pos.function != f) {
      throw Error(ErrorCode::kUnmappableFrame,
                  "statement of frame '" + function + "' was removed");
    }
    out.stack.push_back(minilang::StackFrame{function, pos.line});
  }
  out.location = minilang::SourceLocation{out.stack.back().function, out.stack.back().line};
  return out;
}

}  // namespace fuzzeraid::siggen
