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

#include <gtest/gtest.h>

#include "fuzzeraid/minilang/parser.h"
#include "support/fixtures.h"

namespace fuzzeraid::minilang {
namespace {

TEST(RenderTest, CanonicalLayout) {
  Program p = Parse(
      "global g = 4;\n"
      "fn f(a, b) { if (a < b) { return a; } else { return b; } }\n"
      "fn main() { int i = 0; while (i < 3) { i = i + 1; } if (i) { g = f(i, 2); } }");
  EXPECT_EQ(Render(p),
            "global g = 4;\n"
            "fn f(a, b) {\n"
            "  if (a < b) {\n"
            "    return a;\n"
            "  } else {\n"
            "    return b;\n"
            "  }\n"
            "}\n"
            "fn main() {\n"
            "  int i = 0;\n"
            "  while (i < 3) {\n"
            "    i = i + 1;\n"
            "  }\n"
            "  if (i) {\n"
            "    g = f(i, 2);\n"
            "  }\n"
            "}\n");
}

TEST(RenderTest, WhitespaceAndCommentsDoNotMatter) {
  Program a = Parse("fn main(){x=1;/* c */ if(x==1){free(p);}}");
  Program b = Parse(
      "// leading\n"
      "fn   main ( )\n{\n  x =\n 1 ; // trailing\n"
      "  if ( x == 1 ) { free ( p ) ; }\n}\n");
  EXPECT_EQ(Render(a), Render(b));
  EXPECT_TRUE(StructurallyEqual(a, b));
}

TEST(RenderTest, MinimalParentheses) {
  auto expr = [](const std::string& text) {
    Program p = Parse("fn main() { x = " + text + "; }");
    return RenderExpr(*std::get<AssignStmt>(p.functions[0].body[0]->node).value);
  };
  EXPECT_EQ(expr("(1 + 2) * 3"), "(1 + 2) * 3");
  EXPECT_EQ(expr("1 + (2 * 3)"), "1 + 2 * 3");
  EXPECT_EQ(expr("1 - (2 - 3)"), "1 - (2 - 3)");
  EXPECT_EQ(expr("(1 - 2) - 3"), "1 - 2 - 3");
  EXPECT_EQ(expr("a || b && c"), "a || b && c");
  EXPECT_EQ(expr("(a || b) && c"), "(a || b) && c");
  EXPECT_EQ(expr("!(a == b)"), "!(a == b)");
  EXPECT_EQ(expr("-(-a)"), "-(-a)");
  EXPECT_EQ(expr("*p + &q"), "*p + &q");
  EXPECT_EQ(expr("input(i + 1)"), "input(i + 1)");
  EXPECT_EQ(expr("' '"), "' '");
  EXPECT_EQ(expr("'\\t'"), "'\\t'");
}

TEST(RenderTest, RoundTripOnFixtures) {
  for (const char* name : {"branch/program.ml-src", "branch/signature.ml-src"}) {
    Program p = testing::LoadProgram(name);
    std::string once = Render(p);
    EXPECT_EQ(Render(Parse(once)), once) << name;
  }
}

TEST(RenderTest, EmptyElseIsOmitted) {
  Program p = Parse("fn main() { if (1) { x = 1; } else { } }");
  EXPECT_EQ(Render(p), "fn main() {\n  if (1) {\n    x = 1;\n  }\n}\n");
}

TEST(LineMapTest, StructuralLinesHaveNoNode) {
  Program p = testing::LoadProgram("branch/program.ml-src");
  LineMap lines(p);
  // main: decl, 3 assigns, if, call, "} else {", call, "}".
  EXPECT_EQ(lines.BodyLength(1), 9);
  EXPECT_TRUE(lines.NodeAt(1, 5).has_value());
  EXPECT_FALSE(lines.NodeAt(1, 7).has_value());
  EXPECT_FALSE(lines.NodeAt(1, 9).has_value());
  EXPECT_FALSE(lines.NodeAt(1, 10).has_value());
  EXPECT_FALSE(lines.NodeAt(5, 1).has_value());
  NodeId deref = *lines.NodeAt(0, 2);
  EXPECT_EQ(lines.Find(deref).function, 0);
  EXPECT_EQ(lines.Find(deref).line, 2);
  EXPECT_EQ(lines.Find(9999).function, -1);
}

}  // namespace
}  // namespace fuzzeraid::minilang
