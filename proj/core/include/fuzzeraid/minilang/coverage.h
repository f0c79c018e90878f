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

#ifndef FUZZERAID_MINILANG_COVERAGE_H_
#define FUZZERAID_MINILANG_COVERAGE_H_

#include <compare>
#include <cstdint>
#include <set>

#include "fuzzeraid/minilang/interpreter.h"

namespace fuzzeraid::minilang {

// Hit-count classes: {1}, {2}, {3}, {4-7}, {8-15}, {16-31}, {32-127}, {128+}.
inline constexpr int kNumHitBuckets = 8;

// Bucket index in [0, 7] for a hit count >= 1. Counts of 0 map to 0.
int HitBucket(std::uint64_t count);

struct BucketedEdge {
  Edge edge;
  int bucket = 0;

  auto operator<=>(const BucketedEdge&) const = default;
};

std::set<BucketedEdge> BucketEdges(const EdgeCounts& edges);

}  // namespace fuzzeraid::minilang

#endif  // FUZZERAID_MINILANG_COVERAGE_H_
