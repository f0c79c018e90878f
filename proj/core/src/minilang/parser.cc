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

#include "fuzzeraid/minilang/parser.h"

#include <cctype>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "fuzzeraid/common/error.h"

namespace fuzzeraid::minilang {
namespace {

enum class Tok {
  kIdent, kInt, kChar, kPunct, kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipTrivia();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::kIdent;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          t.text += Advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::kInt;
        std::uint64_t v = 0;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          char d = Advance();
          t.text += d;
          if (v > static_cast<std::uint64_t>((std::numeric_limits<std::int64_t>::max() - (d - '0')) / 10)) {
            throw ParseError(ErrorCode::kSyntaxError,
                             "integer literal out of range", t.line, t.column);
          }
          v = v * 10 + static_cast<std::uint64_t>(d - '0');
        }
        t.value = static_cast<std::int64_t>(v);
      } else if (c == '\'') {
        t.kind = Tok::kChar;
        Advance();
        if (pos_ >= src_.size()) Fail("unterminated character literal", t);
        char ch = Advance();
        if (ch == '\\') {
          if (pos_ >= src_.size()) Fail("unterminated character literal", t);
          char esc = Advance();
          switch (esc) {
            case 'n': ch = '\n'; break;
            case 't': ch = '\t'; break;
            case 'r': ch = '\r'; break;
            case '0': ch = '\0'; break;
            case '\\': ch = '\\'; break;
            case '\'': ch = '\''; break;
            default: Fail("unknown escape sequence", t);
          }
        } else if (ch == '\'' || ch == '\n') {
          Fail("empty character literal", t);
        }
        if (pos_ >= src_.size() || src_[pos_] != '\'') {
          Fail("unterminated character literal", t);
        }
        Advance();
        t.value = static_cast<unsigned char>(ch);
      } else {
        t.kind = Tok::kPunct;
        static constexpr std::string_view kTwo[] = {"==", "!=", "<=", ">=",
                                                    "&&", "||"};
        std::string_view rest = src_.substr(pos_);
        for (auto two : kTwo) {
          if (rest.substr(0, 2) == two) {
            t.text = std::string(two);
            break;
          }
        }
        if (t.text.empty()) {
          static constexpr std::string_view kOne = "(){}[];,=<>+-*/%!&";
          if (kOne.find(c) == std::string_view::npos) {
            Fail(std::string("unexpected character '") + c + "'", t);
          }
          t.text = std::string(1, c);
        }
        for (std::size_t i = 0; i < t.text.size(); ++i) Advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void Fail(const std::string& msg, const Token& at) {
    throw ParseError(ErrorCode::kSyntaxError, msg, at.line, at.column);
  }

  char Advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void SkipTrivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        Token at{Tok::kEnd, "", 0, line_, column_};
        Advance();
        Advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") Advance();
        if (pos_ >= src_.size()) Fail("unterminated comment", at);
        Advance();
        Advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::set<std::string, std::less<>>& Keywords() {
  static const std::set<std::string, std::less<>> kKeywords = {
      "global", "fn",     "int",  "ptr",  "array", "if",    "else",
      "while",  "return", "free", "assert", "input", "null",
  };
  return kKeywords;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program ParseProgram() {
    Program program;
    std::set<std::string, std::less<>> names;
    while (!AtEnd()) {
      if (IsKeyword("global")) {
        program.globals.push_back(ParseGlobal());
      } else if (IsKeyword("fn")) {
        const Token& at = Peek(1);
        FunctionDef fn = ParseFunction();
        if (!names.insert(fn.name).second) {
          throw ParseError(ErrorCode::kDuplicateFunction,
                           "duplicate function '" + fn.name + "'", at.line,
                           at.column);
        }
        program.functions.push_back(std::move(fn));
      } else {
        Fail("expected 'global' or 'fn'");
      }
    }
    return program;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool AtEnd() const { return Peek().kind == Tok::kEnd; }
  bool IsPunct(std::string_view p, std::size_t ahead = 0) const {
    return Peek(ahead).kind == Tok::kPunct && Peek(ahead).text == p;
  }
  bool IsKeyword(std::string_view k) const {
    return Peek().kind == Tok::kIdent && Peek().text == k;
  }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    const Token& t = Peek();
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(ErrorCode::kSyntaxError, msg + ", found " + found, t.line,
                     t.column);
  }

  void Expect(std::string_view p) {
    if (!IsPunct(p)) Fail("expected '" + std::string(p) + "'");
    Next();
  }
  void ExpectKeyword(std::string_view k) {
    if (!IsKeyword(k)) Fail("expected '" + std::string(k) + "'");
    Next();
  }
  std::string ExpectIdent() {
    if (Peek().kind != Tok::kIdent || Keywords().count(Peek().text) != 0) {
      Fail("expected identifier");
    }
    return Next().text;
  }
  std::int64_t ExpectInt() {
    bool negative = false;
    if (IsPunct("-")) {
      Next();
      negative = true;
    }
    if (Peek().kind != Tok::kInt && Peek().kind != Tok::kChar) {
      Fail("expected integer literal");
    }
    std::int64_t v = Next().value;
    return negative ? -v : v;
  }

  GlobalDecl ParseGlobal() {
    ExpectKeyword("global");
    GlobalDecl g;
    g.id = next_id_++;
    g.name = ExpectIdent();
    if (IsPunct("=")) {
      Next();
      g.init = ExpectInt();
    }
    Expect(";");
    return g;
  }

  FunctionDef ParseFunction() {
    ExpectKeyword("fn");
    FunctionDef fn;
    fn.name = ExpectIdent();
    Expect("(");
    if (!IsPunct(")")) {
      fn.params.push_back(ExpectIdent());
      while (IsPunct(",")) {
        Next();
        fn.params.push_back(ExpectIdent());
      }
    }
    Expect(")");
    fn.body = ParseBlock();
    return fn;
  }

  Block ParseBlock() {
    Expect("{");
    Block block;
    while (!IsPunct("}")) {
      if (AtEnd()) Fail("expected '}'");
      block.push_back(ParseStatement());
    }
    Expect("}");
    return block;
  }

  StmtPtr ParseStatement() {
    NodeId id = next_id_++;
    if (IsKeyword("int") || IsKeyword("ptr") || IsKeyword("array")) {
      DeclStmt d;
      std::string kw = Next().text;
      if (kw == "int") {
        d.type = VarType::kInt;
      } else if (kw == "ptr") {
        d.type = VarType::kPtr;
      } else {
        d.type = VarType::kArray;
        Expect("[");
        if (Peek().kind != Tok::kInt) Fail("expected array size");
        d.array_size = Next().value;
        if (d.array_size <= 0) Fail("array size must be positive");
        Expect("]");
      }
      d.name = ExpectIdent();
      if (IsPunct("=")) {
        Next();
        d.init = ParseExpr();
      }
      Expect(";");
      return MakeStmt(id, std::move(d));
    }
    if (IsKeyword("if")) {
      Next();
      IfStmt s;
      Expect("(");
      s.cond = ParseExpr();
      Expect(")");
      s.then_block = ParseBlock();
      if (IsKeyword("else")) {
        Next();
        if (IsKeyword("if")) {
          s.else_block.push_back(ParseStatement());
        } else {
          s.else_block = ParseBlock();
        }
      }
      return MakeStmt(id, std::move(s));
    }
    if (IsKeyword("while")) {
      Next();
      WhileStmt s;
      Expect("(");
      s.cond = ParseExpr();
      Expect(")");
      s.body = ParseBlock();
      return MakeStmt(id, std::move(s));
    }
    if (IsKeyword("return")) {
      Next();
      ReturnStmt s;
      if (!IsPunct(";")) s.value = ParseExpr();
      Expect(";");
      return MakeStmt(id, std::move(s));
    }
    if (IsKeyword("free")) {
      Next();
      Expect("(");
      FreeStmt s{ExpectIdent()};
      Expect(")");
      Expect(";");
      return MakeStmt(id, std::move(s));
    }
    if (IsKeyword("assert")) {
      Next();
      Expect("(");
      AssertStmt s{ParseExpr()};
      Expect(")");
      Expect(";");
      return MakeStmt(id, std::move(s));
    }
    if (IsPunct("*")) {
      Next();
      AssignStmt s;
      s.target.kind = LValue::Kind::kDeref;
      s.target.name = ExpectIdent();
      Expect("=");
      s.value = ParseExpr();
      Expect(";");
      return MakeStmt(id, std::move(s));
    }
    if (Peek().kind == Tok::kIdent && Keywords().count(Peek().text) == 0) {
      if (IsPunct("(", 1)) {
        CallStmt s{ParseCall()};
        Expect(";");
        return MakeStmt(id, std::move(s));
      }
      AssignStmt s;
      s.target.name = ExpectIdent();
      if (IsPunct("[")) {
        Next();
        s.target.kind = LValue::Kind::kIndex;
        s.target.index = ParseExpr();
        Expect("]");
      }
      Expect("=");
      s.value = ParseExpr();
      Expect(";");
      return MakeStmt(id, std::move(s));
    }
    Fail("expected statement");
  }

  CallExpr ParseCall() {
    CallExpr call;
    call.callee = ExpectIdent();
    Expect("(");
    if (!IsPunct(")")) {
      call.args.push_back(ParseExpr());
      while (IsPunct(",")) {
        Next();
        call.args.push_back(ParseExpr());
      }
    }
    Expect(")");
    return call;
  }

  // Precedence climbing; levels from loosest to tightest.
  ExprPtr ParseExpr() { return ParseBinary(0); }

  static int Precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return -1;
  }

  static BinaryOp ToBinaryOp(std::string_view op) {
    if (op == "||") return BinaryOp::kOr;
    if (op == "&&") return BinaryOp::kAnd;
    if (op == "==") return BinaryOp::kEq;
    if (op == "!=") return BinaryOp::kNe;
    if (op == "<") return BinaryOp::kLt;
    if (op == "<=") return BinaryOp::kLe;
    if (op == ">") return BinaryOp::kGt;
    if (op == ">=") return BinaryOp::kGe;
    if (op == "+") return BinaryOp::kAdd;
    if (op == "-") return BinaryOp::kSub;
    if (op == "*") return BinaryOp::kMul;
    if (op == "/") return BinaryOp::kDiv;
    return BinaryOp::kMod;
  }

  ExprPtr ParseBinary(int min_prec) {
    ExprPtr lhs = ParseUnary();
    while (Peek().kind == Tok::kPunct) {
      int prec = Precedence(Peek().text);
      if (prec < 0 || prec < min_prec) break;
      BinaryOp op = ToBinaryOp(Next().text);
      ExprPtr rhs = ParseBinary(prec + 1);
      lhs = MakeExpr(BinaryExpr{op, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr ParseUnary() {
    if (IsPunct("-")) {
      Next();
      return MakeExpr(UnaryExpr{UnaryOp::kNeg, ParseUnary()});
    }
    if (IsPunct("!")) {
      Next();
      return MakeExpr(UnaryExpr{UnaryOp::kNot, ParseUnary()});
    }
    if (IsPunct("*")) {
      Next();
      return MakeExpr(DerefExpr{ExpectIdent()});
    }
    if (IsPunct("&")) {
      Next();
      return MakeExpr(AddressOf{ExpectIdent()});
    }
    return ParsePrimary();
  }

  ExprPtr ParsePrimary() {
    const Token& t = Peek();
    if (t.kind == Tok::kInt) {
      Next();
      return MakeExpr(IntLiteral{t.value, false});
    }
    if (t.kind == Tok::kChar) {
      Next();
      return MakeExpr(IntLiteral{t.value, true});
    }
    if (IsPunct("(")) {
      Next();
      ExprPtr e = ParseExpr();
      Expect(")");
      return e;
    }
    if (IsKeyword("null")) {
      Next();
      return MakeExpr(NullLiteral{});
    }
    if (IsKeyword("input")) {
      Next();
      Expect("(");
      ExprPtr index = ParseExpr();
      Expect(")");
      return MakeExpr(InputExpr{std::move(index)});
    }
    if (t.kind == Tok::kIdent && Keywords().count(t.text) == 0) {
      if (IsPunct("(", 1)) return MakeExpr(ParseCall());
      std::string name = Next().text;
      if (IsPunct("[")) {
        Next();
        ExprPtr index = ParseExpr();
        Expect("]");
        return MakeExpr(IndexExpr{std::move(name), std::move(index)});
      }
      return MakeExpr(VarRef{std::move(name)});
    }
    Fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  NodeId next_id_ = 1;
};

}  // namespace

Program Parse(std::string_view source, ParseMode mode) {
  Parser parser(Lexer(source).Run());
  Program program = parser.ParseProgram();
  if (mode == ParseMode::kExecutable && !program.HasMain()) {
    throw ParseError(ErrorCode::kMissingMain, "program has no 'main' function",
                     1, 1);
  }
  return program;
}

}  // namespace fuzzeraid::minilang
