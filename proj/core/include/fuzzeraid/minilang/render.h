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

#ifndef FUZZERAID_MINILANG_RENDER_H_
#define FUZZERAID_MINILANG_RENDER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fuzzeraid/minilang/ast.h"

namespace fuzzeraid::minilang {

// Canonical text: globals first, then functions in order; one statement per
// line, two-space indentation, `}` and `} else {` on their own lines, no
// comments, no blank lines. Every line ends with '\n'.
std::string Render(const Program& program);

// The canonical rendering split into lines (without terminators).
std::vector<std::string> RenderLines(const Program& program);

std::string RenderExpr(const Expr& expr);

// Canonical text with each statement line suffixed by `  @<node id>`. Two
// programs with equal keys behave identically, including crash identities.
std::string RenderWithIds(const Program& program);

// True when both programs have the same canonical rendering.
bool StructurallyEqual(const Program& a, const Program& b);

// Per-function line numbering of the canonical rendering. Line 1 is the
// first line after `fn name(...) {`; the closing `}` of the function is not
// part of the body. Lines that hold no statement (`}`, `} else {`) map to
// no node.
class LineMap {
 public:
  explicit LineMap(const Program& program);

  struct Position {
    int function = -1;  // index into Program::functions
    int line = 0;
  };

  // Position of a statement, or function == -1 if the node is not a
  // statement of this program.
  Position Find(NodeId node) const;
  bool Contains(NodeId node) const { return positions_.count(node) != 0; }

  // Statement at `line` of `function`, or nullopt for non-statement lines.
  std::optional<NodeId> NodeAt(int function, int line) const;

  int BodyLength(int function) const;

 private:
  std::unordered_map<NodeId, Position> positions_;
  std::vector<std::vector<std::optional<NodeId>>> lines_;
};

}  // namespace fuzzeraid::minilang

#endif  // FUZZERAID_MINILANG_RENDER_H_
