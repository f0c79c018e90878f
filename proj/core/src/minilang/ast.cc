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

#include "fuzzeraid/minilang/ast.h"

namespace fuzzeraid::minilang {

const FunctionDef* Program::FindFunction(std::string_view name) const {
  for (const auto& fn : functions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

int Program::FunctionIndex(std::string_view name) const {
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t CountStatements(const Block& block) {
  std::size_t n = 0;
  for (const auto& stmt : block) {
    ++n;
    if (const auto* s = std::get_if<IfStmt>(&stmt->node)) {
      n += CountStatements(s->then_block) + CountStatements(s->else_block);
    } else if (const auto* w = std::get_if<WhileStmt>(&stmt->node)) {
      n += CountStatements(w->body);
    }
  }
  return n;
}

std::size_t CountStatements(const Program& program) {
  std::size_t n = 0;
  for (const auto& fn : program.functions) n += CountStatements(fn.body);
  return n;
}

}  // namespace fuzzeraid::minilang
