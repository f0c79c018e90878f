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

#ifndef FUZZERAID_MINILANG_EDIT_H_
#define FUZZERAID_MINILANG_EDIT_H_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fuzzeraid/minilang/ast.h"

namespace fuzzeraid::minilang {

enum class DeletionKind {
  kRemove,      // drop the statement or global entirely
  kSpliceThen,  // replace an `if` by its then-block
  kSpliceElse,  // replace an `if` by its (non-empty) else-block
  kSpliceBody,  // replace a `while` by its body
};

struct Deletion {
  NodeId node = 0;
  DeletionKind kind = DeletionKind::kRemove;

  auto operator<=>(const Deletion&) const = default;
};

// Every single-step deletion applicable to `program`, globals first and then
// statements in rendering order. `main` is never deleted as a whole, but all
// of its statements are candidates.
std::vector<Deletion> DeletionCandidates(const Program& program);

// Applies a set of deletions. When one node has several, kRemove wins, then
// the first splice in list order. Deletions of nodes that are gone (inside a
// removed subtree, or unknown) are ignored. Functions unreachable from `main`
// are dropped afterwards.
//
// Returns nullopt when the result is not a valid reduction candidate:
//   * a removed declaration or global is still referenced,
//   * a reachable function other than `main` ends up with an empty body,
//   * the result does not compile.
std::optional<Program> ApplyDeletions(const Program& program,
                                      const std::vector<Deletion>& deletions);

// The same edit without pruning or validation.
Program EditProgram(const Program& program, const std::vector<Deletion>& deletions);

// Drops functions that `main` cannot reach through calls. Programs without
// `main` are returned unchanged.
Program PruneUnreachable(const Program& program);

// Names of all functions called (directly) from `block`.
std::set<std::string> CalledFunctions(const Block& block);

// Variable names read or written anywhere in `block`.
std::set<std::string> ReferencedNames(const Block& block);

// Number of distinct nodes that have at least one deletion candidate.
std::size_t RemovableCount(const Program& program);

}  // namespace fuzzeraid::minilang

#endif  // FUZZERAID_MINILANG_EDIT_H_
