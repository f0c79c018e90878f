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

#include <algorithm>
#include <set>

#include "fuzzeraid/minilang/render.h"

namespace fuzzeraid::triage {

std::size_t LineDistance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  // Single-row dynamic programming.
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

double SignatureSimilarity(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t max_size = std::max(a.size(), b.size());
  if (max_size == 0) return 1.0;
  return static_cast<double>(max_size - LineDistance(a, b)) / static_cast<double>(max_size);
}

double SignatureSimilarity(const siggen::FaultSignature& a, const siggen::FaultSignature& b) {
  return SignatureSimilarity(minilang::RenderLines(a.program), minilang::RenderLines(b.program));
}

double CallStackSimilarity(const minilang::CallStack& a, const minilang::CallStack& b) {
  std::size_t frames = std::max(a.size(), b.size());
  if (frames == 0) return 1.0;
  std::set<std::string> names_a;
  for (const auto& f : a) names_a.insert(f.function);
  std::set<std::string> common;
  for (const auto& f : b) {
    if (names_a.count(f.function) != 0) common.insert(f.function);
  }
  return static_cast<double>(common.size()) / static_cast<double>(frames);
}

double SimilarityScore(const siggen::FaultSignature& a, const siggen::FaultSignature& b) {
  return (SignatureSimilarity(a, b) +
          CallStackSimilarity(a.reference_fingerprint.stack, b.reference_fingerprint.stack)) /
         2.0;
}

}  // namespace fuzzeraid::triage
