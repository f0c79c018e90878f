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

#include "fuzzeraid/minilang/edit.h"

#include <deque>
#include <map>
#include <type_traits>

#include "fuzzeraid/minilang/interpreter.h"

namespace fuzzeraid::minilang {
namespace {

template <typename OnName, typename OnCall>
void VisitExpr(const Expr& e, OnName& on_name, OnCall& on_call) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarRef> || std::is_same_v<T, DerefExpr> ||
                      std::is_same_v<T, AddressOf>) {
          on_name(n.name);
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          on_name(n.name);
          VisitExpr(*n.index, on_name, on_call);
        } else if constexpr (std::is_same_v<T, InputExpr>) {
          VisitExpr(*n.index, on_name, on_call);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          on_call(n.callee);
          for (const auto& arg : n.args) VisitExpr(*arg, on_name, on_call);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          VisitExpr(*n.operand, on_name, on_call);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          VisitExpr(*n.lhs, on_name, on_call);
          VisitExpr(*n.rhs, on_name, on_call);
        }
      },
      e.node);
}

template <typename OnName, typename OnCall>
void VisitBlock(const Block& block, OnName& on_name, OnCall& on_call) {
  for (const auto& stmt : block) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DeclStmt>) {
            if (n.init) VisitExpr(*n.init, on_name, on_call);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            on_name(n.target.name);
            if (n.target.index) VisitExpr(*n.target.index, on_name, on_call);
            VisitExpr(*n.value, on_name, on_call);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            VisitExpr(*n.cond, on_name, on_call);
            VisitBlock(n.then_block, on_name, on_call);
            VisitBlock(n.else_block, on_name, on_call);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            VisitExpr(*n.cond, on_name, on_call);
            VisitBlock(n.body, on_name, on_call);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            on_call(n.call.callee);
            for (const auto& arg : n.call.args) VisitExpr(*arg, on_name, on_call);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (n.value) VisitExpr(*n.value, on_name, on_call);
          } else if constexpr (std::is_same_v<T, FreeStmt>) {
            on_name(n.name);
          } else if constexpr (std::is_same_v<T, AssertStmt>) {
            VisitExpr(*n.cond, on_name, on_call);
          }
        },
        stmt->node);
  }
}

void CollectCandidates(const Block& block, std::vector<Deletion>& out) {
  for (const auto& stmt : block) {
    out.push_back({stmt->id, DeletionKind::kRemove});
    if (const auto* s = std::get_if<IfStmt>(&stmt->node)) {
      out.push_back({stmt->id, DeletionKind::kSpliceThen});
      if (!s->else_block.empty()) out.push_back({stmt->id, DeletionKind::kSpliceElse});
      CollectCandidates(s->then_block, out);
      CollectCandidates(s->else_block, out);
    } else if (const auto* w = std::get_if<WhileStmt>(&stmt->node)) {
      out.push_back({stmt->id, DeletionKind::kSpliceBody});
      CollectCandidates(w->body, out);
    }
  }
}

class Editor {
 public:
  explicit Editor(const std::vector<Deletion>& deletions) {
    for (const auto& d : deletions) {
      auto it = chosen_.find(d.node);
      if (it == chosen_.end()) {
        chosen_.emplace(d.node, d.kind);
      } else if (d.kind == DeletionKind::kRemove) {
        it->second = DeletionKind::kRemove;
      }
    }
  }

  bool IsRemoved(NodeId id) const {
    auto it = chosen_.find(id);
    return it != chosen_.end() && it->second == DeletionKind::kRemove;
  }

  // Returns true when anything changed. Removed declarations are reported
  // through `removed_decls`.
  bool EditBlock(const Block& in, Block& out, std::vector<std::string>& removed_decls) {
    bool changed = false;
    for (const auto& stmt : in) {
      auto it = chosen_.find(stmt->id);
      const IfStmt* if_stmt = std::get_if<IfStmt>(&stmt->node);
      const WhileStmt* while_stmt = std::get_if<WhileStmt>(&stmt->node);
      if (it != chosen_.end()) {
        DeletionKind kind = it->second;
        if (kind == DeletionKind::kRemove) {
          if (const auto* d = std::get_if<DeclStmt>(&stmt->node)) {
            removed_decls.push_back(d->name);
          }
          changed = true;
          continue;
        }
        if (if_stmt != nullptr && kind == DeletionKind::kSpliceThen) {
          EditBlock(if_stmt->then_block, out, removed_decls);
          changed = true;
          continue;
        }
        if (if_stmt != nullptr && kind == DeletionKind::kSpliceElse) {
          EditBlock(if_stmt->else_block, out, removed_decls);
          changed = true;
          continue;
        }
        if (while_stmt != nullptr && kind == DeletionKind::kSpliceBody) {
          EditBlock(while_stmt->body, out, removed_decls);
          changed = true;
          continue;
        }
      }
      if (if_stmt != nullptr) {
        IfStmt copy{if_stmt->cond, {}, {}};
        bool a = EditBlock(if_stmt->then_block, copy.then_block, removed_decls);
        bool b = EditBlock(if_stmt->else_block, copy.else_block, removed_decls);
        if (a || b) {
          out.push_back(MakeStmt(stmt->id, std::move(copy)));
          changed = true;
          continue;
        }
      } else if (while_stmt != nullptr) {
        WhileStmt copy{while_stmt->cond, {}};
        if (EditBlock(while_stmt->body, copy.body, removed_decls)) {
          out.push_back(MakeStmt(stmt->id, std::move(copy)));
          changed = true;
          continue;
        }
      }
      out.push_back(stmt);
    }
    return changed;
  }

 private:
  std::map<NodeId, DeletionKind> chosen_;
};

}  // namespace

std::vector<Deletion> DeletionCandidates(const Program& program) {
  std::vector<Deletion> out;
  for (const auto& g : program.globals) out.push_back({g.id, DeletionKind::kRemove});
  for (const auto& fn : program.functions) CollectCandidates(fn.body, out);
  return out;
}

std::size_t RemovableCount(const Program& program) {
  std::set<NodeId> nodes;
  for (const auto& d : DeletionCandidates(program)) nodes.insert(d.node);
  return nodes.size();
}

std::set<std::string> CalledFunctions(const Block& block) {
  std::set<std::string> calls;
  auto on_name = [](const std::string&) {};
  auto on_call = [&](const std::string& name) { calls.insert(name); };
  VisitBlock(block, on_name, on_call);
  return calls;
}

std::set<std::string> ReferencedNames(const Block& block) {
  std::set<std::string> names;
  auto on_name = [&](const std::string& name) { names.insert(name); };
  auto on_call = [](const std::string&) {};
  VisitBlock(block, on_name, on_call);
  return names;
}

Program PruneUnreachable(const Program& program) {
  int main_index = program.FunctionIndex("main");
  if (main_index < 0) return program;
  std::set<std::string> reachable{"main"};
  std::deque<std::string> work{"main"};
  while (!work.empty()) {
    const FunctionDef* fn = program.FindFunction(work.front());
    work.pop_front();
    if (fn == nullptr) continue;
    for (const auto& callee : CalledFunctions(fn->body)) {
      if (reachable.insert(callee).second) work.push_back(callee);
    }
  }
  Program out;
  out.globals = program.globals;
  for (const auto& fn : program.functions) {
    if (reachable.count(fn.name) != 0) out.functions.push_back(fn);
  }
  return out;
}

namespace {

struct EditResult {
  Program program;
  std::vector<std::string> removed_globals;
  std::vector<std::vector<std::string>> removed_decls;  // per function
};

EditResult Edit(const Program& program, const std::vector<Deletion>& deletions) {
  Editor editor(deletions);
  EditResult r;
  for (const auto& g : program.globals) {
    if (editor.IsRemoved(g.id)) {
      r.removed_globals.push_back(g.name);
    } else {
      r.program.globals.push_back(g);
    }
  }
  r.removed_decls.resize(program.functions.size());
  for (std::size_t f = 0; f < program.functions.size(); ++f) {
    const FunctionDef& fn = program.functions[f];
    FunctionDef copy{fn.name, fn.params, {}};
    editor.EditBlock(fn.body, copy.body, r.removed_decls[f]);
    r.program.functions.push_back(std::move(copy));
  }
  return r;
}

}  // namespace

Program EditProgram(const Program& program, const std::vector<Deletion>& deletions) {
  return Edit(program, deletions).program;
}

std::optional<Program> ApplyDeletions(const Program& program,
                                      const std::vector<Deletion>& deletions) {
  EditResult r = Edit(program, deletions);
  const Program& edited = r.program;
  Program pruned = PruneUnreachable(edited);
  std::set<std::string> used_anywhere;
  for (std::size_t f = 0; f < edited.functions.size(); ++f) {
    const FunctionDef& fn = edited.functions[f];
    if (pruned.FindFunction(fn.name) == nullptr) continue;
    if (fn.body.empty() && fn.name != "main") return std::nullopt;
    std::set<std::string> names = ReferencedNames(fn.body);
    for (const auto& name : r.removed_decls[f]) {
      if (names.count(name) != 0) return std::nullopt;
    }
    used_anywhere.insert(names.begin(), names.end());
  }
  for (const auto& name : r.removed_globals) {
    if (used_anywhere.count(name) != 0) return std::nullopt;
  }
  if (!Compile(pruned).ok()) return std::nullopt;
  return pruned;
}

}  // namespace fuzzeraid::minilang
