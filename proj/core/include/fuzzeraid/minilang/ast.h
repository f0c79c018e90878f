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

#ifndef FUZZERAID_MINILANG_AST_H_
#define FUZZERAID_MINILANG_AST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fuzzeraid::minilang {

// Identity of a statement or global declaration. Assigned once at parse time
// and preserved by every program edit (removal, splicing, pruning), so the
// same statement can be followed from an original program into its slices
// and reductions. Ids are unique within one program, never reused.
using NodeId = std::uint32_t;

enum class BinaryOp {
  kAdd, kSub, kMul, kDiv, kMod,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kAnd, kOr,
};

enum class UnaryOp { kNeg, kNot };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLiteral {
  std::int64_t value = 0;
  bool is_char = false;  // written as a character literal, rendered back as one
};
struct NullLiteral {};
struct VarRef {
  std::string name;
};
struct DerefExpr {
  std::string name;
};
struct AddressOf {
  std::string name;
};
struct IndexExpr {
  std::string name;
  ExprPtr index;
};
struct InputExpr {
  ExprPtr index;
};
struct CallExpr {
  std::string callee;
  std::vector<ExprPtr> args;
};
struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<IntLiteral, NullLiteral, VarRef, DerefExpr, AddressOf, IndexExpr,
               InputExpr, CallExpr, UnaryExpr, BinaryExpr>
      node;
};

template <typename T>
ExprPtr MakeExpr(T node) {
  return std::make_shared<const Expr>(Expr{std::move(node)});
}

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using Block = std::vector<StmtPtr>;

enum class VarType { kInt, kPtr, kArray };

struct DeclStmt {
  VarType type = VarType::kInt;
  std::int64_t array_size = 0;  // only for kArray
  std::string name;
  ExprPtr init;  // may be null
};

struct LValue {
  enum class Kind { kVar, kDeref, kIndex };
  Kind kind = Kind::kVar;
  std::string name;
  ExprPtr index;  // only for kIndex
};

struct AssignStmt {
  LValue target;
  ExprPtr value;
};
struct IfStmt {
  ExprPtr cond;
  Block then_block;
  Block else_block;
};
struct WhileStmt {
  ExprPtr cond;
  Block body;
};
struct CallStmt {
  CallExpr call;
};
struct ReturnStmt {
  ExprPtr value;  // may be null
};
struct FreeStmt {
  std::string name;
};
struct AssertStmt {
  ExprPtr cond;
};

struct Stmt {
  NodeId id = 0;
  std::variant<DeclStmt, AssignStmt, IfStmt, WhileStmt, CallStmt, ReturnStmt,
               FreeStmt, AssertStmt>
      node;
};

template <typename T>
StmtPtr MakeStmt(NodeId id, T node) {
  return std::make_shared<const Stmt>(Stmt{id, std::move(node)});
}

struct GlobalDecl {
  NodeId id = 0;
  std::string name;
  std::optional<std::int64_t> init;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  Block body;
};

// A parsed mini-language program. Statements are immutable and shared
// between copies, so copying a Program (as the reducer does for every
// candidate) only copies the block vectors along edited paths.
struct Program {
  std::vector<GlobalDecl> globals;
  std::vector<FunctionDef> functions;

  const FunctionDef* FindFunction(std::string_view name) const;
  int FunctionIndex(std::string_view name) const;  // -1 when absent
  bool HasMain() const { return FindFunction("main") != nullptr; }
};

// Total number of statements, counting nested ones.
std::size_t CountStatements(const Block& block);
std::size_t CountStatements(const Program& program);

}  // namespace fuzzeraid::minilang

#endif  // FUZZERAID_MINILANG_AST_H_
