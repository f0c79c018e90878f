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

#include "fuzzeraid/minilang/render.h"

#include <string>
#include <type_traits>

namespace fuzzeraid::minilang {
namespace {

int Precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return 1;
    case BinaryOp::kAnd: return 2;
    case BinaryOp::kEq:
    case BinaryOp::kNe: return 3;
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe: return 4;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 5;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kMod: return 6;
  }
  return 0;
}

constexpr int kUnaryPrecedence = 7;
constexpr int kPrimaryPrecedence = 8;

std::string_view OpText(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

int ExprPrecedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) return Precedence(b->op);
  if (std::holds_alternative<UnaryExpr>(e.node)) return kUnaryPrecedence;
  if (const auto* lit = std::get_if<IntLiteral>(&e.node)) {
    // A negative literal prints with a leading '-', so treat it as unary.
    if (lit->value < 0) return kUnaryPrecedence;
  }
  return kPrimaryPrecedence;
}

std::string CharLiteral(std::int64_t v) {
  switch (v) {
    case '\n': return "'\\n'";
    case '\t': return "'\\t'";
    case '\r': return "'\\r'";
    case '\0': return "'\\0'";
    case '\'': return "'\\''";
    case '\\': return "'\\\\'";
    default: break;
  }
  if (v >= 0x20 && v < 0x7f) return std::string("'") + static_cast<char>(v) + "'";
  return std::to_string(v);
}

void AppendExpr(const Expr& e, std::string& out);

void AppendOperand(const Expr& e, int min_prec, std::string& out) {
  if (ExprPrecedence(e) < min_prec) {
    out += '(';
    AppendExpr(e, out);
    out += ')';
  } else {
    AppendExpr(e, out);
  }
}

void AppendCall(const CallExpr& call, std::string& out) {
  out += call.callee;
  out += '(';
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (i > 0) out += ", ";
    AppendExpr(*call.args[i], out);
  }
  out += ')';
}

void AppendExpr(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          out += n.is_char ? CharLiteral(n.value) : std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, NullLiteral>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, VarRef>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, DerefExpr>) {
          out += '*';
          out += n.name;
        } else if constexpr (std::is_same_v<T, AddressOf>) {
          out += '&';
          out += n.name;
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          out += n.name;
          out += '[';
          AppendExpr(*n.index, out);
          out += ']';
        } else if constexpr (std::is_same_v<T, InputExpr>) {
          out += "input(";
          AppendExpr(*n.index, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          AppendCall(n, out);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          out += n.op == UnaryOp::kNeg ? '-' : '!';
          // "--x" would still lex back correctly, but keep it readable.
          if (n.op == UnaryOp::kNeg && ExprPrecedence(*n.operand) == kUnaryPrecedence) {
            out += '(';
            AppendExpr(*n.operand, out);
            out += ')';
          } else {
            AppendOperand(*n.operand, kUnaryPrecedence, out);
          }
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          int prec = Precedence(n.op);
          AppendOperand(*n.lhs, prec, out);
          out += ' ';
          out += OpText(n.op);
          out += ' ';
          AppendOperand(*n.rhs, prec + 1, out);
        }
      },
      e.node);
}

std::string SimpleStatement(const Stmt& stmt) {
  std::string out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DeclStmt>) {
          switch (n.type) {
            case VarType::kInt: out += "int "; break;
            case VarType::kPtr: out += "ptr "; break;
            case VarType::kArray:
              out += "array[" + std::to_string(n.array_size) + "] ";
              break;
          }
          out += n.name;
          if (n.init) {
            out += " = ";
            AppendExpr(*n.init, out);
          }
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          if (n.target.kind == LValue::Kind::kDeref) out += '*';
          out += n.target.name;
          if (n.target.kind == LValue::Kind::kIndex) {
            out += '[';
            AppendExpr(*n.target.index, out);
            out += ']';
          }
          out += " = ";
          AppendExpr(*n.value, out);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          AppendCall(n.call, out);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          out += "return";
          if (n.value) {
            out += ' ';
            AppendExpr(*n.value, out);
          }
        } else if constexpr (std::is_same_v<T, FreeStmt>) {
          out += "free(" + n.name + ")";
        } else if constexpr (std::is_same_v<T, AssertStmt>) {
          out += "assert(";
          AppendExpr(*n.cond, out);
          out += ')';
        }
      },
      stmt.node);
  out += ';';
  return out;
}

// Walks a block in rendering order. `emit(text, node)` is called once per
// output line; `node` is null for structural lines.
template <typename Emit>
void WalkBlock(const Block& block, int depth, Emit& emit) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& stmt : block) {
    if (const auto* s = std::get_if<IfStmt>(&stmt->node)) {
      std::string head = indent + "if (";
      AppendExpr(*s->cond, head);
      head += ") {";
      emit(head, stmt.get());
      WalkBlock(s->then_block, depth + 1, emit);
      if (!s->else_block.empty()) {
        emit(indent + "} else {", nullptr);
        WalkBlock(s->else_block, depth + 1, emit);
      }
      emit(indent + "}", nullptr);
    } else if (const auto* w = std::get_if<WhileStmt>(&stmt->node)) {
      std::string head = indent + "while (";
      AppendExpr(*w->cond, head);
      head += ") {";
      emit(head, stmt.get());
      WalkBlock(w->body, depth + 1, emit);
      emit(indent + "}", nullptr);
    } else {
      emit(indent + SimpleStatement(*stmt), stmt.get());
    }
  }
}

std::string FunctionHeader(const FunctionDef& fn) {
  std::string out = "fn " + fn.name + "(";
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += fn.params[i];
  }
  out += ") {";
  return out;
}

}  // namespace

std::vector<std::string> RenderLines(const Program& program) {
  std::vector<std::string> lines;
  for (const auto& g : program.globals) {
    std::string line = "global " + g.name;
    if (g.init) line += " = " + std::to_string(*g.init);
    line += ';';
    lines.push_back(std::move(line));
  }
  auto emit = [&](std::string text, const Stmt*) { lines.push_back(std::move(text)); };
  for (const auto& fn : program.functions) {
    lines.push_back(FunctionHeader(fn));
    WalkBlock(fn.body, 1, emit);
    lines.push_back("}");
  }
  return lines;
}

std::string RenderWithIds(const Program& program) {
  std::string out;
  for (const auto& g : program.globals) {
    out += "global " + g.name;
    if (g.init) out += " = " + std::to_string(*g.init);
    out += ";  @" + std::to_string(g.id) + "\n";
  }
  auto emit = [&](const std::string& text, const Stmt* stmt) {
    out += text;
    if (stmt != nullptr) out += "  @" + std::to_string(stmt->id);
    out += '\n';
  };
  for (const auto& fn : program.functions) {
    out += FunctionHeader(fn) + "\n";
    WalkBlock(fn.body, 1, emit);
    out += "}\n";
  }
  return out;
}

std::string Render(const Program& program) {
  std::string out;
  for (const auto& line : RenderLines(program)) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string RenderExpr(const Expr& expr) {
  std::string out;
  AppendExpr(expr, out);
  return out;
}

bool StructurallyEqual(const Program& a, const Program& b) {
  return Render(a) == Render(b);
}

LineMap::LineMap(const Program& program) {
  lines_.resize(program.functions.size());
  for (std::size_t f = 0; f < program.functions.size(); ++f) {
    auto& lines = lines_[f];
    auto emit = [&](const std::string&, const Stmt* stmt) {
      if (stmt != nullptr) {
        lines.emplace_back(stmt->id);
        positions_[stmt->id] =
            Position{static_cast<int>(f), static_cast<int>(lines.size())};
      } else {
        lines.emplace_back(std::nullopt);
      }
    };
    WalkBlock(program.functions[f].body, 1, emit);
  }
}

LineMap::Position LineMap::Find(NodeId node) const {
  auto it = positions_.find(node);
  return it == positions_.end() ? Position{} : it->second;
}

std::optional<NodeId> LineMap::NodeAt(int function, int line) const {
  if (function < 0 || function >= static_cast<int>(lines_.size())) return std::nullopt;
  const auto& lines = lines_[static_cast<std::size_t>(function)];
  if (line < 1 || line > static_cast<int>(lines.size())) return std::nullopt;
  return lines[static_cast<std::size_t>(line - 1)];
}

int LineMap::BodyLength(int function) const {
  if (function < 0 || function >= static_cast<int>(lines_.size())) return 0;
  return static_cast<int>(lines_[static_cast<std::size_t>(function)].size());
}

}  // namespace fuzzeraid::minilang
