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

#include <random>
#include <set>
#include <unordered_set>

#include "fuzzeraid/corpus/corpus.h"
#include "fuzzeraid/minilang/coverage.h"

namespace fuzzeraid::corpus {
namespace {

// The usual interesting 8-bit values (-128, -1, 0, 1, 16, 32, 64, 100, 127).
constexpr std::uint8_t kInteresting[] = {0x80, 0xff, 0, 1, 16, 32, 64, 100, 127};

class Mutator {
 public:
  Mutator(std::uint64_t seed, std::size_t max_size) : rng_(seed), max_size_(max_size) {}

  // Draws from the engine directly; distribution objects are not portable.
  std::size_t Below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }

  std::uint8_t Byte(const std::vector<Bytes>& queue) {
    switch (Below(3)) {
      case 0: return kInteresting[Below(std::size(kInteresting))];
      case 1: {
        // Reuse a byte seen in the queue so tokens survive.
        const Bytes& b = queue[Below(queue.size())];
        if (!b.empty()) return b[Below(b.size())];
        break;
      }
      default: break;
    }
    return static_cast<std::uint8_t>(Below(256));
  }

  Bytes Mutate(const std::vector<Bytes>& queue) {
    Bytes out = queue[Below(queue.size())];
    switch (Below(5)) {
      case 0:  // flip one bit
        if (!out.empty()) out[Below(out.size())] ^= static_cast<std::uint8_t>(1u << Below(8));
        break;
      case 1:  // substitute a byte
        if (!out.empty()) out[Below(out.size())] = Byte(queue);
        break;
      case 2:  // truncate
        if (!out.empty()) out.resize(Below(out.size()));
        break;
      case 3:  // extend: insert a byte somewhere
        if (out.size() < max_size_) {
          out.insert(out.begin() + static_cast<std::ptrdiff_t>(Below(out.size() + 1)), Byte(queue));
        }
        break;
      default: {  // splice: prefix of this entry, suffix of another
        const Bytes& other = queue[Below(queue.size())];
        std::size_t cut_a = Below(out.size() + 1);
        std::size_t cut_b = Below(other.size() + 1);
        out.resize(cut_a);
        out.insert(out.end(), other.begin() + static_cast<std::ptrdiff_t>(cut_b), other.end());
        break;
      }
    }
    if (out.size() > max_size_) out.resize(max_size_);
    return out;
  }

 private:
  std::mt19937_64 rng_;
  std::size_t max_size_;
};

struct BytesHash {
  std::size_t operator()(const Bytes& b) const {
    return std::hash<std::string_view>()(
        std::string_view(reinterpret_cast<const char*>(b.data()), b.size()));
  }
};

}  // namespace

std::optional<triage::CrashRecord> MakeRecord(const minilang::Program& original, std::string id,
                                              const Bytes& input, std::size_t step_budget) {
  minilang::ExecutionOutcome out = minilang::Execute(original, input, step_budget);
  if (!out.crashed()) return std::nullopt;
  return triage::CrashRecord{std::move(id), input, *out.fingerprint, std::nullopt};
}

std::vector<triage::CrashRecord> Explore(const minilang::Program& original, const Bytes& seed,
                                         const ExploreOptions& options) {
  minilang::CompileResult compiled = minilang::Compile(original);
  if (!compiled.ok()) throw Error(ErrorCode::kInvalidProgram, compiled.message);
  minilang::ExecuteOptions exec;
  exec.step_budget = options.step_budget;

  auto next_id = [&](std::size_t n) { return options.id_prefix + triage::FormatId(n); };

  minilang::ExecutionOutcome first = minilang::Execute(*compiled.program, seed, exec);
  if (!first.crashed()) throw Error(ErrorCode::kSeedNotCrashing, "seed input does not crash program");

  std::vector<triage::CrashRecord> crashes;
  crashes.push_back({next_id(1), seed, *first.fingerprint, std::nullopt});
  std::unordered_set<Bytes, BytesHash> seen{seed};
  std::set<minilang::BucketedEdge> coverage = minilang::BucketEdges(first.edges);
  std::vector<Bytes> queue{seed};

  Mutator mutator(options.rng_seed, options.max_input_size);
  for (std::size_t i = 0; i < options.iterations; ++i) {
    Bytes mutant = mutator.Mutate(queue);
    if (seen.count(mutant) != 0) continue;
    minilang::ExecutionOutcome out = minilang::Execute(*compiled.program, mutant, exec);
    if (!out.crashed()) continue;
    seen.insert(mutant);
    bool fresh = false;
    for (const auto& point : minilang::BucketEdges(out.edges)) {
      fresh = coverage.insert(point).second || fresh;
    }
    if (fresh) queue.push_back(mutant);
    crashes.push_back({next_id(crashes.size() + 1), std::move(mutant), *out.fingerprint,
                       std::nullopt});
  }
  return crashes;
}

}  // namespace fuzzeraid::corpus
