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

#include "support/brute_force.h"

#include <vector>

#include <gtest/gtest.h>

#include "fuzzeraid/minilang/edit.h"
#include "fuzzeraid/minilang/render.h"

namespace fuzzeraid::testing {

using minilang::Deletion;
using minilang::DeletionKind;

namespace {

using Choice = std::vector<Deletion>;

std::vector<Choice> Product(const std::vector<Choice>& a, const std::vector<Choice>& b) {
  std::vector<Choice> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Choice c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Choice> EnumerateBlock(const minilang::Block& block);

std::vector<Choice> EnumerateStmt(const minilang::StmtPtr& stmt) {
  std::vector<Choice> out{{Deletion{stmt->id, DeletionKind::kRemove}}};
  auto with = [&](DeletionKind kind, const std::vector<Choice>& inner) {
    for (auto c : inner) {
      c.push_back(Deletion{stmt->id, kind});
      out.push_back(std::move(c));
    }
  };
  if (const auto* s = std::get_if<minilang::IfStmt>(&stmt->node)) {
    auto then_choices = EnumerateBlock(s->then_block);
    auto else_choices = EnumerateBlock(s->else_block);
    auto keep = Product(then_choices, else_choices);
    out.insert(out.end(), keep.begin(), keep.end());
    with(DeletionKind::kSpliceThen, then_choices);
    if (!s->else_block.empty()) with(DeletionKind::kSpliceElse, else_choices);
  } else if (const auto* w = std::get_if<minilang::WhileStmt>(&stmt->node)) {
    auto body = EnumerateBlock(w->body);
    out.insert(out.end(), body.begin(), body.end());
    with(DeletionKind::kSpliceBody, body);
  } else {
    out.push_back({});
  }
  return out;
}

std::vector<Choice> EnumerateBlock(const minilang::Block& block) {
  std::vector<Choice> acc{{}};
  for (const auto& stmt : block) acc = Product(acc, EnumerateStmt(stmt));
  return acc;
}

bool SameFailure(const minilang::ExecutionOutcome& a, const minilang::ExecutionOutcome& b) {
  if (!a.crashed() || !b.crashed()) return false;
  if (a.fingerprint->kind != b.fingerprint->kind) return false;
  if (a.crash_nodes != b.crash_nodes) return false;
  for (std::size_t i = 0; i < a.fingerprint->stack.size(); ++i) {
    if (a.fingerprint->stack[i].function != b.fingerprint->stack[i].function) return false;
  }
  return true;
}

}  // namespace

std::size_t ProgramSize(const minilang::Program& program) {
  return minilang::CountStatements(program) + program.globals.size();
}

BruteForceResult BruteForceMinimum(const minilang::Program& program, const Bytes& input,
                                   const minilang::FailureFingerprint& target,
                                   std::size_t step_budget) {
  minilang::ExecutionOutcome reference = minilang::Execute(program, input, step_budget);
  EXPECT_TRUE(reference.crashed() && *reference.fingerprint == target)
      << "brute force precondition";

  std::vector<Choice> choices{{}};
  for (const auto& g : program.globals) {
    choices = Product(choices, {{}, {Deletion{g.id, DeletionKind::kRemove}}});
  }
  for (const auto& fn : program.functions) choices = Product(choices, EnumerateBlock(fn.body));

  BruteForceResult result;
  result.min_size = ProgramSize(program);
  std::set<std::string> seen;
  for (const auto& choice : choices) {
    auto candidate = minilang::ApplyDeletions(program, choice);
    if (!candidate) continue;
    if (!seen.insert(minilang::RenderWithIds(*candidate)).second) continue;
    std::string text = minilang::Render(*candidate);
    ++result.programs_tested;
    if (!SameFailure(minilang::Execute(*candidate, input, step_budget), reference)) continue;
    std::size_t size = ProgramSize(*candidate);
    if (size < result.min_size) {
      result.min_size = size;
      result.minimal_renderings.clear();
    }
    if (size == result.min_size) result.minimal_renderings.insert(text);
  }
  return result;
}

}  // namespace fuzzeraid::testing
