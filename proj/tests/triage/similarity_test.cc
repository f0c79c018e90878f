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

#include "fuzzeraid/triage/similarity.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fuzzeraid/minilang/parser.h"
#include "fuzzeraid/minilang/render.h"
#include "support/fixtures.h"

namespace fuzzeraid::triage {
namespace {

using minilang::CallStack;
using siggen::FaultSignature;

// Plain recursive edit distance with memoisation, written independently of
// the library's rolling-row version.
std::size_t OracleDistance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<long>> memo(a.size() + 1, std::vector<long>(b.size() + 1, -1));
  auto go = [&](auto& self, std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (memo[i][j] >= 0) return static_cast<std::size_t>(memo[i][j]);
    std::size_t best = self(self, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    best = std::min(best, self(self, i + 1, j) + 1);
    best = std::min(best, self(self, i, j + 1) + 1);
    memo[i][j] = static_cast<long>(best);
    return best;
  };
  return go(go, 0, 0);
}

double OracleSig(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  double n = static_cast<double>(std::max(a.size(), b.size()));
  return (n - static_cast<double>(OracleDistance(a, b))) / n;
}

CallStack Stack(std::initializer_list<const char*> names) {
  CallStack s;
  int line = 1;
  for (const char* n : names) s.push_back({n, line++});
  return s;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

FaultSignature FromFixture(const std::string& file, CallStack stack) {
  FaultSignature s;
  s.program = testing::LoadProgram(file);
  s.reference_fingerprint.stack = std::move(stack);
  return s;
}

TEST(SimilarityTest, HandComputedExamples) {
  EXPECT_NEAR(SignatureSimilarity({"a", "b"}, {"a", "c"}), 0.5, 1e-9);
  EXPECT_NEAR(SignatureSimilarity({"a", "b", "c"}, {"x", "y", "z"}), 0.0, 1e-9);
  EXPECT_NEAR(SignatureSimilarity({"a", "b"}, {"a", "b"}), 1.0, 1e-9);
  EXPECT_EQ(LineDistance({"a", "b", "c"}, {"b", "c"}), 1u);
  EXPECT_EQ(LineDistance({}, {"a", "b"}), 2u);

  EXPECT_NEAR(CallStackSimilarity(Stack({"main", "bug", "trigger"}), Stack({"main", "bug", "trigger"})),
              1.0, 1e-9);
  EXPECT_NEAR(CallStackSimilarity(Stack({"main", "foo", "bug"}), Stack({"main", "bar", "bug"})),
              2.0 / 3.0, 1e-9);
  EXPECT_NEAR(CallStackSimilarity(Stack({"a", "b"}), Stack({"c", "d", "e", "f"})), 0.0, 1e-9);
  // Recursion counts each name once.
  EXPECT_NEAR(CallStackSimilarity(Stack({"main", "f", "f", "f"}), Stack({"main", "f"})), 0.5, 1e-9);
}

// Names are a set but the denominator counts frames, so a recursive stack is
// not fully similar to itself.
TEST(SimilarityTest, RecursiveStackAgainstItself) {
  CallStack s = Stack({"main", "walk", "walk", "walk"});
  EXPECT_NEAR(CallStackSimilarity(s, s), 0.5, 1e-9);
}

TEST(SimilarityTest, ScoreIsTheMean) {
  FaultSignature a;
  a.program = minilang::Parse("fn main() { x = 1; }", minilang::ParseMode::kExecutable);
  a.reference_fingerprint.stack = Stack({"main"});
  FaultSignature b = a;
  EXPECT_NEAR(SimilarityScore(a, b), 1.0, 1e-9);
  b.program = minilang::Parse("fn main() { y = 1; }", minilang::ParseMode::kExecutable);
  ASSERT_NEAR(SignatureSimilarity(a, b), 2.0 / 3.0, 1e-9);
  FaultSignature c;
  c.program = minilang::Parse("fn main() { x = 1; y = 2; z = 3; w = 4; }",
                              minilang::ParseMode::kExecutable);
  c.reference_fingerprint.stack = Stack({"main"});
  FaultSignature d = c;
  d.program = minilang::Parse("fn main() { x = 1; q = 5; r = 6; s = 7; }",
                              minilang::ParseMode::kExecutable);
  ASSERT_NEAR(SignatureSimilarity(c, d), 0.5, 1e-9);
  EXPECT_NEAR(SimilarityScore(c, d), 0.75, 1e-9);
}

TEST(SimilarityTest, RecordStreamSignatures) {
  FaultSignature sig1 = FromFixture("records/sig1.ml-src", Stack({"main", "foo", "bug", "trigger"}));
  FaultSignature sig2 = FromFixture("records/sig2.ml-src", Stack({"main", "bar", "bug", "trigger"}));
  FaultSignature sig3 = FromFixture("records/sig3.ml-src", Stack({"main", "foo", "bug", "trigger"}));
  auto l1 = Lines(testing::ReadFixture("records/sig1.ml-src"));
  auto l2 = Lines(testing::ReadFixture("records/sig2.ml-src"));
  auto l3 = Lines(testing::ReadFixture("records/sig3.ml-src"));

  double s12 = (OracleSig(l1, l2) + 3.0 / 4.0) / 2.0;
  double s13 = (OracleSig(l1, l3) + 1.0) / 2.0;
  EXPECT_NEAR(SimilarityScore(sig1, sig2), s12, 1e-9);
  EXPECT_NEAR(SimilarityScore(sig1, sig3), s13, 1e-9);
  EXPECT_GE(s12, 0.7);
  EXPECT_LT(s13, 0.7);
}

// Random signature built from a small statement pool so pairs share lines.
FaultSignature RandomSignature(std::mt19937& rng) {
  static const char* kPool[] = {"x = 1;", "y = x + 1;", "f(x);", "ptr p;", "assert(x);",
                                "x = input(0);", "free(p);", "z = 0;"};
  static const char* kNames[] = {"main", "f", "g", "h", "bug", "trigger"};
  std::uniform_int_distribution<int> len(0, 7), pick(0, 7), name(0, 5), depth(1, 6);
  std::string text = "fn f(a) { return a; } fn main() { int x = 0; ";
  for (int i = len(rng); i > 0; --i) text += kPool[pick(rng)] + std::string(" ");
  text += "}";
  FaultSignature s;
  s.program = minilang::Parse(text, minilang::ParseMode::kExecutable);
  for (int i = depth(rng); i > 0; --i) {
    s.reference_fingerprint.stack.push_back({kNames[name(rng)], 1});
  }
  return s;
}

TEST(SimilarityTest, SymmetricBoundedAndReflexive) {
  std::mt19937 rng(20261019);
  for (int i = 0; i < 10000; ++i) {
    FaultSignature a = RandomSignature(rng);
    FaultSignature b = RandomSignature(rng);
    double sab = SignatureSimilarity(a, b);
    double cab = CallStackSimilarity(a.reference_fingerprint.stack, b.reference_fingerprint.stack);
    double score = SimilarityScore(a, b);
    ASSERT_DOUBLE_EQ(sab, SignatureSimilarity(b, a));
    ASSERT_DOUBLE_EQ(cab, CallStackSimilarity(b.reference_fingerprint.stack,
                                              a.reference_fingerprint.stack));
    ASSERT_DOUBLE_EQ(score, SimilarityScore(b, a));
    for (double v : {sab, cab, score}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    ASSERT_NEAR(sab, OracleSig(minilang::RenderLines(a.program), minilang::RenderLines(b.program)),
                1e-12);
    ASSERT_DOUBLE_EQ(SignatureSimilarity(a, a), 1.0);
    std::set<std::string> distinct;
    for (const auto& f : a.reference_fingerprint.stack) distinct.insert(f.function);
    if (distinct.size() == a.reference_fingerprint.stack.size()) {
      ASSERT_DOUBLE_EQ(SimilarityScore(a, a), 1.0);
    }
  }
}

}  // namespace
}  // namespace fuzzeraid::triage
