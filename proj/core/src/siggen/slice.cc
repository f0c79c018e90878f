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

#include "fuzzeraid/siggen/slice.h"

#include <map>
#include <set>
#include <string>

#include "fuzzeraid/minilang/edit.h"
#include "fuzzeraid/minilang/render.h"
#include "fuzzeraid/siggen/remap.h"

namespace fuzzeraid::siggen {

using minilang::Program;

namespace {

// Calls made by the statement itself, not by statements nested in it.
std::set<std::string> OwnCalls(const minilang::Stmt& stmt) {
  using minilang::Block;
  if (const auto* s = std::get_if<minilang::IfStmt>(&stmt.node)) {
    minilang::Block probe{minilang::MakeStmt(0, minilang::AssertStmt{s->cond})};
    return minilang::CalledFunctions(probe);
  }
  if (const auto* w = std::get_if<minilang::WhileStmt>(&stmt.node)) {
    minilang::Block probe{minilang::MakeStmt(0, minilang::AssertStmt{w->cond})};
    return minilang::CalledFunctions(probe);
  }
  return minilang::CalledFunctions(Block{std::make_shared<const minilang::Stmt>(stmt)});
}

void IndexStatements(const minilang::Block& block,
                     std::map<minilang::NodeId, const minilang::Stmt*>& out) {
  for (const auto& stmt : block) {
    out[stmt->id] = stmt.get();
    if (const auto* s = std::get_if<minilang::IfStmt>(&stmt->node)) {
      IndexStatements(s->then_block, out);
      IndexStatements(s->else_block, out);
    } else if (const auto* w = std::get_if<minilang::WhileStmt>(&stmt->node)) {
      IndexStatements(w->body, out);
    }
  }
}

}  // namespace

Program SliceProgram(const Program& original,
                     const std::vector<minilang::StatementId>& trace) {
  minilang::LineMap lines(original);
  std::map<minilang::NodeId, const minilang::Stmt*> statements;
  for (const auto& fn : original.functions) IndexStatements(fn.body, statements);

  std::set<minilang::NodeId> traced;
  std::set<std::string> keep{"main"};
  for (const auto& id : trace) {
    auto node = lines.NodeAt(id.function, id.line);
    if (!node) {
      throw Error(ErrorCode::kSliceNotReproducing, "trace does not belong to the program");
    }
    if (traced.insert(*node).second) {
      keep.insert(original.functions[id.function].name);
      for (const auto& callee : OwnCalls(*statements.at(*node))) keep.insert(callee);
    }
  }

  Program slice;
  slice.globals = original.globals;
  for (const auto& fn : original.functions) {
    if (keep.count(fn.name) != 0) slice.functions.push_back(fn);
  }

  while (true) {
    minilang::CompileResult compiled = minilang::Compile(slice);
    if (compiled.ok()) break;
    if (compiled.offending.empty()) {
      throw Error(ErrorCode::kSliceNotReproducing, compiled.message);
    }
    std::vector<minilang::Deletion> drop;
    for (auto node : compiled.offending) {
      if (traced.count(node) != 0) {
        throw Error(ErrorCode::kSliceNotReproducing,
                    "traced statement does not compile in the slice: " + compiled.message);
      }
      drop.push_back({node, minilang::DeletionKind::kRemove});
    }
    slice = minilang::EditProgram(slice, drop);
  }
  return slice;
}

void VerifySlice(const Program& original, const Program& slice, const Bytes& input,
                 std::size_t step_budget) {
  minilang::ExecutionOutcome a = minilang::Execute(original, input, step_budget);
  minilang::ExecutionOutcome b = minilang::Execute(slice, input, step_budget);
  if (!a.crashed() || !b.crashed() || !(Identify(a) == Identify(b))) {
    throw Error(ErrorCode::kSliceNotReproducing,
                "sliced program does not reproduce the failure");
  }
}

}  // namespace fuzzeraid::siggen
