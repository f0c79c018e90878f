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

#include "fuzzeraid/minilang/interpreter.h"

#include <limits>
#include <set>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>

#include "fuzzeraid/minilang/render.h"

namespace fuzzeraid::minilang {

std::string_view FailureKindName(FailureKind kind) {
  switch (kind) {
    case FailureKind::kNullDeref: return "NullDeref";
    case FailureKind::kUseAfterFree: return "UseAfterFree";
    case FailureKind::kDivByZero: return "DivByZero";
    case FailureKind::kOutOfBounds: return "OutOfBounds";
    case FailureKind::kAssertFail: return "AssertFail";
  }
  return "Unknown";
}

std::optional<FailureKind> ParseFailureKind(std::string_view name) {
  for (auto kind : {FailureKind::kNullDeref, FailureKind::kUseAfterFree,
                    FailureKind::kDivByZero, FailureKind::kOutOfBounds,
                    FailureKind::kAssertFail}) {
    if (FailureKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t FailureFingerprintHash::operator()(const FailureFingerprint& fp) const {
  std::size_t h = std::hash<int>()(static_cast<int>(fp.kind));
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::string>()(fp.location.function));
  mix(std::hash<int>()(fp.location.line));
  for (const auto& frame : fp.stack) {
    mix(std::hash<std::string>()(frame.function));
    mix(std::hash<int>()(frame.line));
  }
  return h;
}

std::string DebugString(const FailureFingerprint& fp) {
  std::string out(FailureKindName(fp.kind));
  out += " at " + fp.location.function + ":" + std::to_string(fp.location.line) + " [";
  for (std::size_t i = 0; i < fp.stack.size(); ++i) {
    if (i > 0) out += " > ";
    out += fp.stack[i].function + ":" + std::to_string(fp.stack[i].line);
  }
  out += "]";
  return out;
}

namespace {

enum class Op : std::uint8_t {
  kStmt,         // a = statement index; records a step
  kPushInt,      // b = value
  kLoadVar,      // a = slot, b = 1 for globals
  kAddrVar,      // a = slot, b = 1 for globals
  kStoreVar,     // a = slot, b = 1 for globals; pops value
  kDeclReset,    // a = slot
  kDeref,        // pops pointer, pushes value
  kStoreDeref,   // pops value, pointer
  kLoadIndex,    // pops index, pointer
  kStoreIndex,   // pops value, index, pointer
  kInput,
  kNeg,
  kNot,
  kToBool,
  kBinary,       // a = BinaryOp
  kJump,         // a = target
  kJumpIfFalse,  // a = target; pops
  kAndJump,      // a = target; falsy top -> 0 and jump, else pop
  kOrJump,       // a = target; truthy top -> 1 and jump, else pop
  kCall,         // a = function, b = argc
  kRet,          // pops return value
  kPop,
  kFree,
  kAssert,
};

struct Instr {
  Op op;
  std::int32_t a = 0;
  std::int64_t b = 0;
};

struct CompiledFunction {
  std::string name;
  int num_params = 0;
  std::vector<std::int64_t> slot_sizes;
  std::vector<bool> slot_is_array;
  std::vector<Instr> code;
  std::vector<NodeId> stmt_nodes;
  std::vector<std::uint16_t> stmt_lines;
};

}  // namespace

class CompiledProgram {
 public:
  std::vector<CompiledFunction> functions;
  std::vector<std::int64_t> global_inits;
  int main_index = -1;
};

namespace {

constexpr int kMaxIndex = std::numeric_limits<std::uint16_t>::max();

class FunctionCompiler {
 public:
  FunctionCompiler(const Program& program, int function_index,
                   const std::unordered_map<std::string, int>& globals,
                   const LineMap& lines, CompileResult& result,
                   CompiledFunction& out)
      : program_(program),
        fn_(program.functions[static_cast<std::size_t>(function_index)]),
        function_index_(function_index),
        globals_(globals),
        lines_(lines),
        result_(result),
        out_(out) {}

  void Run() {
    out_.name = fn_.name;
    out_.num_params = static_cast<int>(fn_.params.size());
    std::unordered_map<std::string, int> params;
    for (const auto& p : fn_.params) {
      if (!params.emplace(p, NewSlot(1, false)).second) {
        Fail(0, "duplicate parameter '" + p + "' in " + fn_.name);
      }
    }
    scopes_.push_back(std::move(params));

    // Names assigned without a visible declaration become function-level
    // ints, zero at entry.
    std::vector<std::set<std::string>> declared{{}};
    for (const auto& p : fn_.params) declared.back().insert(p);
    CollectImplicit(fn_.body, declared);
    for (const auto& name : implicit_names_) implicit_[name] = NewSlot(1, false);

    scopes_.emplace_back();
    CompileBlock(fn_.body);
    Emit(Op::kPushInt, 0, 0);
    Emit(Op::kRet);
  }

 private:
  int NewSlot(std::int64_t size, bool is_array) {
    out_.slot_sizes.push_back(size);
    out_.slot_is_array.push_back(is_array);
    return static_cast<int>(out_.slot_sizes.size() - 1);
  }

  void Fail(NodeId node, const std::string& message) {
    if (result_.message.empty()) result_.message = message;
    if (node != 0) result_.offending.push_back(node);
    failed_ = true;
  }

  std::size_t Emit(Op op, std::int32_t a = 0, std::int64_t b = 0) {
    out_.code.push_back(Instr{op, a, b});
    return out_.code.size() - 1;
  }
  void Patch(std::size_t at) {
    out_.code[at].a = static_cast<std::int32_t>(out_.code.size());
  }

  bool IsDeclared(const std::vector<std::set<std::string>>& declared,
                  const std::string& name) const {
    for (const auto& scope : declared) {
      if (scope.count(name) != 0) return true;
    }
    return globals_.count(name) != 0;
  }

  void CollectImplicit(const Block& block,
                       std::vector<std::set<std::string>>& declared) {
    declared.emplace_back();
    for (const auto& stmt : block) {
      if (const auto* d = std::get_if<DeclStmt>(&stmt->node)) {
        declared.back().insert(d->name);
      } else if (const auto* a = std::get_if<AssignStmt>(&stmt->node)) {
        if (a->target.kind == LValue::Kind::kVar &&
            !IsDeclared(declared, a->target.name)) {
          implicit_names_.insert(a->target.name);
        }
      } else if (const auto* s = std::get_if<IfStmt>(&stmt->node)) {
        CollectImplicit(s->then_block, declared);
        CollectImplicit(s->else_block, declared);
      } else if (const auto* w = std::get_if<WhileStmt>(&stmt->node)) {
        CollectImplicit(w->body, declared);
      }
    }
    declared.pop_back();
  }

  struct Resolved {
    bool found = false;
    bool global = false;
    int slot = 0;
    bool is_array = false;
  };

  Resolved Resolve(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) {
        return {true, false, found->second,
                out_.slot_is_array[static_cast<std::size_t>(found->second)]};
      }
    }
    if (auto it = implicit_.find(name); it != implicit_.end()) {
      return {true, false, it->second, false};
    }
    if (auto it = globals_.find(name); it != globals_.end()) {
      return {true, true, it->second, false};
    }
    return {};
  }

  // Emits `op` for a variable, or records an error against `node`.
  bool EmitVar(Op op, const std::string& name) {
    Resolved r = Resolve(name);
    if (!r.found) {
      Fail(current_node_, "undeclared variable '" + name + "' in " + fn_.name);
      return false;
    }
    if (op == Op::kStoreVar && r.is_array) {
      Fail(current_node_, "cannot assign to array '" + name + "'");
      return false;
    }
    Emit(op, r.slot, r.global ? 1 : 0);
    return true;
  }

  void CompileCall(const CallExpr& call) {
    int callee = program_.FunctionIndex(call.callee);
    if (callee < 0) {
      Fail(current_node_, "call to undefined function '" + call.callee + "'");
    } else if (program_.functions[static_cast<std::size_t>(callee)].params.size() !=
               call.args.size()) {
      Fail(current_node_, "wrong number of arguments to '" + call.callee + "'");
    }
    for (const auto& arg : call.args) CompileExpr(*arg);
    Emit(Op::kCall, callee, static_cast<std::int64_t>(call.args.size()));
  }

  void CompileExpr(const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLiteral>) {
            Emit(Op::kPushInt, 0, n.value);
          } else if constexpr (std::is_same_v<T, NullLiteral>) {
            Emit(Op::kPushInt, 0, 0);
          } else if constexpr (std::is_same_v<T, VarRef>) {
            EmitVar(Op::kLoadVar, n.name);
          } else if constexpr (std::is_same_v<T, DerefExpr>) {
            EmitVar(Op::kLoadVar, n.name);
            Emit(Op::kDeref);
          } else if constexpr (std::is_same_v<T, AddressOf>) {
            EmitVar(Op::kAddrVar, n.name);
          } else if constexpr (std::is_same_v<T, IndexExpr>) {
            EmitVar(Op::kLoadVar, n.name);
            CompileExpr(*n.index);
            Emit(Op::kLoadIndex);
          } else if constexpr (std::is_same_v<T, InputExpr>) {
            CompileExpr(*n.index);
            Emit(Op::kInput);
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            CompileCall(n);
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            CompileExpr(*n.operand);
            Emit(n.op == UnaryOp::kNeg ? Op::kNeg : Op::kNot);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            CompileExpr(*n.lhs);
            if (n.op == BinaryOp::kAnd || n.op == BinaryOp::kOr) {
              std::size_t jump = Emit(n.op == BinaryOp::kAnd ? Op::kAndJump : Op::kOrJump);
              CompileExpr(*n.rhs);
              Emit(Op::kToBool);
              Patch(jump);
            } else {
              CompileExpr(*n.rhs);
              Emit(Op::kBinary, static_cast<std::int32_t>(n.op));
            }
          }
        },
        e.node);
  }

  void CompileBlock(const Block& block) {
    scopes_.emplace_back();
    for (const auto& stmt : block) CompileStmt(*stmt);
    scopes_.pop_back();
  }

  void CompileStmt(const Stmt& stmt) {
    current_node_ = stmt.id;
    auto pos = lines_.Find(stmt.id);
    if (pos.line > kMaxIndex || out_.stmt_nodes.size() >= static_cast<std::size_t>(
                                     std::numeric_limits<std::int32_t>::max())) {
      Fail(stmt.id, "function '" + fn_.name + "' is too long");
    }
    out_.stmt_nodes.push_back(stmt.id);
    out_.stmt_lines.push_back(static_cast<std::uint16_t>(pos.line));
    Emit(Op::kStmt, static_cast<std::int32_t>(out_.stmt_nodes.size() - 1));

    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DeclStmt>) {
            if (scopes_.back().count(n.name) != 0) {
              Fail(stmt.id, "duplicate declaration of '" + n.name + "'");
            }
            bool is_array = n.type == VarType::kArray;
            if (is_array && n.init) {
              Fail(stmt.id, "array '" + n.name + "' cannot have an initializer");
            }
            if (n.init) CompileExpr(*n.init);
            int slot = NewSlot(is_array ? n.array_size : 1, is_array);
            scopes_.back()[n.name] = slot;
            Emit(Op::kDeclReset, slot);
            if (n.init) Emit(Op::kStoreVar, slot, 0);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            switch (n.target.kind) {
              case LValue::Kind::kVar:
                CompileExpr(*n.value);
                EmitVar(Op::kStoreVar, n.target.name);
                break;
              case LValue::Kind::kDeref:
                EmitVar(Op::kLoadVar, n.target.name);
                CompileExpr(*n.value);
                Emit(Op::kStoreDeref);
                break;
              case LValue::Kind::kIndex:
                EmitVar(Op::kLoadVar, n.target.name);
                CompileExpr(*n.target.index);
                CompileExpr(*n.value);
                Emit(Op::kStoreIndex);
                break;
            }
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            CompileExpr(*n.cond);
            std::size_t to_else = Emit(Op::kJumpIfFalse);
            CompileBlock(n.then_block);
            if (n.else_block.empty()) {
              Patch(to_else);
            } else {
              std::size_t to_end = Emit(Op::kJump);
              Patch(to_else);
              CompileBlock(n.else_block);
              Patch(to_end);
            }
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            auto head = static_cast<std::int32_t>(out_.code.size() - 1);
            CompileExpr(*n.cond);
            std::size_t to_end = Emit(Op::kJumpIfFalse);
            CompileBlock(n.body);
            Emit(Op::kJump, head);
            Patch(to_end);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            CompileCall(n.call);
            Emit(Op::kPop);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (n.value) {
              CompileExpr(*n.value);
            } else {
              Emit(Op::kPushInt, 0, 0);
            }
            Emit(Op::kRet);
          } else if constexpr (std::is_same_v<T, FreeStmt>) {
            EmitVar(Op::kLoadVar, n.name);
            Emit(Op::kFree);
          } else if constexpr (std::is_same_v<T, AssertStmt>) {
            CompileExpr(*n.cond);
            Emit(Op::kAssert);
          }
        },
        stmt.node);
    current_node_ = 0;
  }

  const Program& program_;
  const FunctionDef& fn_;
  int function_index_;
  const std::unordered_map<std::string, int>& globals_;
  const LineMap& lines_;
  CompileResult& result_;
  CompiledFunction& out_;

  std::vector<std::unordered_map<std::string, int>> scopes_;
  std::set<std::string> implicit_names_;
  std::unordered_map<std::string, int> implicit_;
  NodeId current_node_ = 0;
  bool failed_ = false;
};

}  // namespace

CompileResult Compile(const Program& program) {
  CompileResult result;
  auto compiled = std::make_shared<CompiledProgram>();
  if (program.functions.size() > static_cast<std::size_t>(kMaxIndex)) {
    result.message = "too many functions";
    return result;
  }
  std::unordered_map<std::string, int> globals;
  for (const auto& g : program.globals) {
    int index = static_cast<int>(compiled->global_inits.size());
    if (!globals.emplace(g.name, index).second) {
      if (result.message.empty()) result.message = "duplicate global '" + g.name + "'";
      result.offending.push_back(g.id);
    }
    compiled->global_inits.push_back(g.init.value_or(0));
  }
  LineMap lines(program);
  compiled->functions.resize(program.functions.size());
  for (std::size_t f = 0; f < program.functions.size(); ++f) {
    FunctionCompiler(program, static_cast<int>(f), globals, lines, result,
                     compiled->functions[f])
        .Run();
  }
  compiled->main_index = program.FunctionIndex("main");
  if (compiled->main_index < 0) {
    if (result.message.empty()) result.message = "program has no 'main' function";
  } else if (!program.functions[static_cast<std::size_t>(compiled->main_index)]
                  .params.empty()) {
    if (result.message.empty()) result.message = "'main' must not take parameters";
  }
  if (result.message.empty()) result.program = std::move(compiled);
  return result;
}

namespace {

struct Value {
  std::int64_t i = 0;
  std::uint32_t cell = 0;
  std::uint32_t gen = 0;
  bool is_ptr = false;

  static Value Int(std::int64_t v) { return Value{v, 0, 0, false}; }
  static Value Ptr(std::uint32_t cell, std::uint32_t gen) {
    return Value{0, cell, gen, true};
  }
};

struct Cell {
  std::vector<Value> data;
  std::uint32_t gen = 0;
  bool freed = false;
};

struct Frame {
  int function = 0;
  std::size_t pc = 0;
  std::size_t slot_base = 0;
  int stmt = -1;  // index into stmt_nodes of the statement being executed
};

std::int64_t ToInt(const Value& v) {
  if (!v.is_ptr) return v.i;
  return static_cast<std::int64_t>((static_cast<std::uint64_t>(v.gen) << 32) |
                                   (static_cast<std::uint64_t>(v.cell) + 1));
}

std::int64_t Wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

struct Fault {
  FailureKind kind;
};

class Machine {
 public:
  Machine(const CompiledProgram& program, const Bytes& input,
          const ExecuteOptions& options)
      : program_(program), input_(input), options_(options) {}

  ExecutionOutcome Run() {
    for (auto init : program_.global_inits) {
      std::uint32_t cell = Alloc(1);
      cells_[cell].data[0] = Value::Int(init);
      global_cells_.push_back(cell);
    }
    PushFrame(program_.main_index, 0);
    try {
      Loop();
    } catch (const Fault& fault) {
      RecordCrash(fault.kind);
    }
    if (options_.record_coverage) {
      for (const auto& [key, count] : edge_counts_) {
        outcome_.edges.emplace(Edge{Unpack(key >> 32), Unpack(key & 0xffffffffu)},
                               count);
      }
    }
    return std::move(outcome_);
  }

 private:
  static std::uint32_t Pack(StatementId id) {
    return (static_cast<std::uint32_t>(id.function) << 16) | id.line;
  }
  static StatementId Unpack(std::uint64_t v) {
    return StatementId{static_cast<std::uint16_t>(v >> 16),
                       static_cast<std::uint16_t>(v & 0xffff)};
  }

  std::uint32_t Alloc(std::int64_t size) {
    std::uint32_t index;
    if (!free_cells_.empty()) {
      index = free_cells_.back();
      free_cells_.pop_back();
    } else {
      index = static_cast<std::uint32_t>(cells_.size());
      cells_.emplace_back();
    }
    Cell& c = cells_[index];
    c.data.assign(static_cast<std::size_t>(size), Value::Int(0));
    c.freed = false;
    return index;
  }

  void Release(std::uint32_t index) {
    Cell& c = cells_[index];
    ++c.gen;
    c.freed = false;
    free_cells_.push_back(index);
  }

  void PushFrame(int function, std::size_t argc) {
    const CompiledFunction& fn = program_.functions[static_cast<std::size_t>(function)];
    Frame frame;
    frame.function = function;
    frame.slot_base = slots_.size();
    for (auto size : fn.slot_sizes) slots_.push_back(Alloc(size));
    // Arguments occupy the first slots.
    for (std::size_t i = 0; i < argc; ++i) {
      cells_[slots_[frame.slot_base + i]].data[0] = stack_[stack_.size() - argc + i];
    }
    stack_.resize(stack_.size() - argc);
    frames_.push_back(frame);
  }

  void PopFrame() {
    const Frame& frame = frames_.back();
    for (std::size_t i = frame.slot_base; i < slots_.size(); ++i) Release(slots_[i]);
    slots_.resize(frame.slot_base);
    frames_.pop_back();
  }

  // Returns false when the budget is spent.
  bool Step(const Frame& frame) {
    if (outcome_.steps >= options_.step_budget) {
      outcome_.status = ExecutionStatus::kBudgetExhausted;
      return false;
    }
    ++outcome_.steps;
    if (options_.record_coverage) {
      const CompiledFunction& fn = program_.functions[static_cast<std::size_t>(frame.function)];
      StatementId id{static_cast<std::uint16_t>(frame.function),
                     fn.stmt_lines[static_cast<std::size_t>(frame.stmt)]};
      std::uint32_t packed = Pack(id);
      if (!outcome_.trace.empty()) {
        ++edge_counts_[(static_cast<std::uint64_t>(prev_) << 32) | packed];
      }
      outcome_.trace.push_back(id);
      prev_ = packed;
    }
    return true;
  }

  Cell& Live(const Value& ptr) {
    if (!ptr.is_ptr) throw Fault{FailureKind::kNullDeref};
    Cell& c = cells_[ptr.cell];
    if (c.gen != ptr.gen || c.freed) throw Fault{FailureKind::kUseAfterFree};
    return c;
  }

  std::uint32_t VarCell(const Frame& frame, const Instr& in) const {
    if (in.b != 0) return global_cells_[static_cast<std::size_t>(in.a)];
    return slots_[frame.slot_base + static_cast<std::size_t>(in.a)];
  }

  Value Pop() {
    Value v = stack_.back();
    stack_.pop_back();
    return v;
  }

  std::int64_t Binary(BinaryOp op, std::int64_t a, std::int64_t b) {
    auto ua = static_cast<std::uint64_t>(a);
    auto ub = static_cast<std::uint64_t>(b);
    switch (op) {
      case BinaryOp::kAdd: return Wrap(ua + ub);
      case BinaryOp::kSub: return Wrap(ua - ub);
      case BinaryOp::kMul: return Wrap(ua * ub);
      case BinaryOp::kDiv:
        if (b == 0) throw Fault{FailureKind::kDivByZero};
        if (b == -1) return Wrap(0 - ua);
        return a / b;
      case BinaryOp::kMod:
        if (b == 0) throw Fault{FailureKind::kDivByZero};
        if (b == -1) return 0;
        return a % b;
      case BinaryOp::kEq: return a == b;
      case BinaryOp::kNe: return a != b;
      case BinaryOp::kLt: return a < b;
      case BinaryOp::kLe: return a <= b;
      case BinaryOp::kGt: return a > b;
      case BinaryOp::kGe: return a >= b;
      case BinaryOp::kAnd: return a != 0 && b != 0;
      case BinaryOp::kOr: return a != 0 || b != 0;
    }
    return 0;
  }

  void Loop() {
    while (!frames_.empty()) {
      Frame& frame = frames_.back();
      const CompiledFunction& fn = program_.functions[static_cast<std::size_t>(frame.function)];
      const Instr& in = fn.code[frame.pc++];
      switch (in.op) {
        case Op::kStmt:
          frame.stmt = in.a;
          if (!Step(frame)) return;
          break;
        case Op::kPushInt:
          stack_.push_back(Value::Int(in.b));
          break;
        case Op::kLoadVar: {
          std::uint32_t cell = VarCell(frame, in);
          if (in.b == 0 && fn.slot_is_array[static_cast<std::size_t>(in.a)]) {
            stack_.push_back(Value::Ptr(cell, cells_[cell].gen));
          } else {
            stack_.push_back(cells_[cell].data[0]);
          }
          break;
        }
        case Op::kAddrVar: {
          std::uint32_t cell = VarCell(frame, in);
          stack_.push_back(Value::Ptr(cell, cells_[cell].gen));
          break;
        }
        case Op::kStoreVar:
          cells_[VarCell(frame, in)].data[0] = Pop();
          break;
        case Op::kDeclReset: {
          auto& data = cells_[VarCell(frame, in)].data;
          std::fill(data.begin(), data.end(), Value::Int(0));
          cells_[VarCell(frame, in)].freed = false;
          break;
        }
        case Op::kDeref: {
          Value ptr = Pop();
          stack_.push_back(Live(ptr).data[0]);
          break;
        }
        case Op::kStoreDeref: {
          Value v = Pop();
          Value ptr = Pop();
          Live(ptr).data[0] = v;
          break;
        }
        case Op::kLoadIndex: {
          std::int64_t index = ToInt(Pop());
          Cell& c = Live(Pop());
          if (index < 0 || index >= static_cast<std::int64_t>(c.data.size())) {
            throw Fault{FailureKind::kOutOfBounds};
          }
          stack_.push_back(c.data[static_cast<std::size_t>(index)]);
          break;
        }
        case Op::kStoreIndex: {
          Value v = Pop();
          std::int64_t index = ToInt(Pop());
          Cell& c = Live(Pop());
          if (index < 0 || index >= static_cast<std::int64_t>(c.data.size())) {
            throw Fault{FailureKind::kOutOfBounds};
          }
          c.data[static_cast<std::size_t>(index)] = v;
          break;
        }
        case Op::kInput: {
          std::int64_t index = ToInt(Pop());
          std::int64_t byte = -1;
          if (index >= 0 && static_cast<std::uint64_t>(index) < input_.size()) {
            byte = input_[static_cast<std::size_t>(index)];
          }
          stack_.push_back(Value::Int(byte));
          break;
        }
        case Op::kNeg:
          stack_.back() = Value::Int(Wrap(0 - static_cast<std::uint64_t>(ToInt(stack_.back()))));
          break;
        case Op::kNot:
          stack_.back() = Value::Int(ToInt(stack_.back()) == 0 ? 1 : 0);
          break;
        case Op::kToBool:
          stack_.back() = Value::Int(ToInt(stack_.back()) != 0 ? 1 : 0);
          break;
        case Op::kBinary: {
          std::int64_t b = ToInt(Pop());
          std::int64_t a = ToInt(Pop());
          stack_.push_back(Value::Int(Binary(static_cast<BinaryOp>(in.a), a, b)));
          break;
        }
        case Op::kJump:
          frame.pc = static_cast<std::size_t>(in.a);
          break;
        case Op::kJumpIfFalse:
          if (ToInt(Pop()) == 0) frame.pc = static_cast<std::size_t>(in.a);
          break;
        case Op::kAndJump:
          if (ToInt(stack_.back()) == 0) {
            stack_.back() = Value::Int(0);
            frame.pc = static_cast<std::size_t>(in.a);
          } else {
            stack_.pop_back();
          }
          break;
        case Op::kOrJump:
          if (ToInt(stack_.back()) != 0) {
            stack_.back() = Value::Int(1);
            frame.pc = static_cast<std::size_t>(in.a);
          } else {
            stack_.pop_back();
          }
          break;
        case Op::kCall:
          PushFrame(in.a, static_cast<std::size_t>(in.b));
          break;
        case Op::kRet: {
          Value result = Pop();
          PopFrame();
          if (!frames_.empty()) {
            stack_.push_back(result);
            // Control comes back to the calling statement: one more step.
            if (!Step(frames_.back())) return;
          }
          break;
        }
        case Op::kPop:
          stack_.pop_back();
          break;
        case Op::kFree: {
          Value ptr = Pop();
          if (!ptr.is_ptr && ptr.i == 0) break;
          Live(ptr).freed = true;
          break;
        }
        case Op::kAssert:
          if (ToInt(Pop()) == 0) throw Fault{FailureKind::kAssertFail};
          break;
      }
    }
    outcome_.status = ExecutionStatus::kCompleted;
  }

  void RecordCrash(FailureKind kind) {
    outcome_.status = ExecutionStatus::kCrashed;
    FailureFingerprint fp;
    fp.kind = kind;
    for (const auto& frame : frames_) {
      const CompiledFunction& fn = program_.functions[static_cast<std::size_t>(frame.function)];
      auto stmt = static_cast<std::size_t>(frame.stmt);
      fp.stack.push_back(StackFrame{fn.name, fn.stmt_lines[stmt]});
      outcome_.crash_nodes.push_back(fn.stmt_nodes[stmt]);
    }
    fp.location = SourceLocation{fp.stack.back().function, fp.stack.back().line};
    outcome_.fingerprint = std::move(fp);
  }

  const CompiledProgram& program_;
  const Bytes& input_;
  const ExecuteOptions& options_;

  std::vector<Cell> cells_;
  std::vector<std::uint32_t> free_cells_;
  std::vector<std::uint32_t> global_cells_;
  std::vector<std::uint32_t> slots_;
  std::vector<Value> stack_;
  std::vector<Frame> frames_;
  std::unordered_map<std::uint64_t, std::uint64_t> edge_counts_;
  std::uint32_t prev_ = 0;
  ExecutionOutcome outcome_;
};

}  // namespace

ExecutionOutcome Execute(const CompiledProgram& program, const Bytes& input,
                         const ExecuteOptions& options) {
  return Machine(program, input, options).Run();
}

ExecutionOutcome Execute(const Program& program, const Bytes& input,
                         std::size_t step_budget) {
  if (!program.HasMain()) {
    throw Error(ErrorCode::kMissingMain, "program has no 'main' function");
  }
  CompileResult compiled = Compile(program);
  if (!compiled.ok()) throw Error(ErrorCode::kInvalidProgram, compiled.message);
  ExecuteOptions options;
  options.step_budget = step_budget;
  return Execute(*compiled.program, input, options);
}

}  // namespace fuzzeraid::minilang
