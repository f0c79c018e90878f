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

#ifndef FUZZERAID_TRIAGE_SIMILARITY_H_
#define FUZZERAID_TRIAGE_SIMILARITY_H_

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzeraid/minilang/interpreter.h"
#include "fuzzeraid/siggen/signature.h"

namespace fuzzeraid::triage {

// Levenshtein distance where each whole line is one symbol.
std::size_t LineDistance(const std::vector<std::string>& a, const std::vector<std::string>& b);

// (max size - line distance) / max size. Two empty inputs score 1.
double SignatureSimilarity(const std::vector<std::string>& a, const std::vector<std::string>& b);
double SignatureSimilarity(const siggen::FaultSignature& a, const siggen::FaultSignature& b);

// Distinct function names shared by both stacks over the longer stack's
// frame count. Recursion does not inflate the numerator.
double CallStackSimilarity(const minilang::CallStack& a, const minilang::CallStack& b);

// Mean of the two scores above; the call stacks are the reference stacks.
double SimilarityScore(const siggen::FaultSignature& a, const siggen::FaultSignature& b);

}  // namespace fuzzeraid::triage

#endif  // FUZZERAID_TRIAGE_SIMILARITY_H_
