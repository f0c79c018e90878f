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

#ifndef FUZZERAID_TOOLS_CLI_PIPELINE_H_
#define FUZZERAID_TOOLS_CLI_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fuzzeraid/baselines/baselines.h"
#include "fuzzeraid/corpus/corpus.h"
#include "fuzzeraid/io/store.h"
#include "fuzzeraid/triage/triage.h"

namespace fuzzeraid::cli {

struct PipelineOptions {
  std::size_t iterations = 2000;
  std::uint64_t rng_seed = 1;
  std::size_t per_bug_cap = 250;
  std::size_t max_input_size = 64;
  triage::TriageConfig triage;
};

struct PipelineResult {
  std::string name;
  std::vector<triage::CrashRecord> corpus;  // capped, labels filled in
  std::vector<corpus::GroundTruthLabel> labels;
  triage::GroupingResult grouping;
  std::vector<triage::FaultGroup> groups;
  corpus::Metrics metrics;
  std::vector<baselines::DedupReport> baselines;  // afl, stack:1, stack:5, site
};

// explore every seed -> label -> cap per bug -> group -> merge -> score,
// plus the dedup baselines on the same capped corpus.
PipelineResult RunPipeline(const io::SuiteProgram& program, const PipelineOptions& options);

// corpus/, labels.json, signatures/, groups.json, missed.json, baselines.json
void WritePipeline(const std::filesystem::path& dir, const PipelineResult& result);

// Rng stream for the k-th seed of a run (splitmix64 of the pair).
std::uint64_t StreamSeed(std::uint64_t rng_seed, std::uint64_t k);

// Runs fn(0..n-1) on up to `jobs` threads. Callers write results by index,
// so output order never depends on scheduling.
void ParallelFor(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace fuzzeraid::cli

#endif  // FUZZERAID_TOOLS_CLI_PIPELINE_H_
