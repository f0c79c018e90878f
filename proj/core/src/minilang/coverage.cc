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

#include "fuzzeraid/minilang/coverage.h"

namespace fuzzeraid::minilang {

int HitBucket(std::uint64_t count) {
  if (count <= 3) return count == 0 ? 0 : static_cast<int>(count) - 1;
  if (count <= 7) return 3;
  if (count <= 15) return 4;
  if (count <= 31) return 5;
  if (count <= 127) return 6;
  return 7;
}

std::set<BucketedEdge> BucketEdges(const EdgeCounts& edges) {
  std::set<BucketedEdge> out;
  for (const auto& [edge, count] : edges) out.insert(BucketedEdge{edge, HitBucket(count)});
  return out;
}

}  // namespace fuzzeraid::minilang
