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

#include "cli/pipeline.h"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "fuzzeraid/minilang/interpreter.h"

namespace fuzzeraid::cli {

std::uint64_t StreamSeed(std::uint64_t rng_seed, std::uint64_t k) {
  std::uint64_t z = rng_seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void ParallelFor(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

PipelineResult RunPipeline(const io::SuiteProgram& program, const PipelineOptions& options) {
  PipelineResult result;
  result.name = program.name;

  std::vector<triage::CrashRecord> explored;
  for (std::size_t k = 0; k < program.seeds.size(); ++k) {
    corpus::ExploreOptions explore;
    explore.iterations = options.iterations;
    explore.rng_seed = StreamSeed(options.rng_seed, k);
    explore.step_budget = options.triage.step_budget;
    explore.max_input_size = options.max_input_size;
    explore.id_prefix = program.seeds[k].first + "-";
    auto part = corpus::Explore(program.original, program.seeds[k].second, explore);
    explored.insert(explored.end(), part.begin(), part.end());
  }

  auto labels = corpus::LabelWithPatches(explored, program.original, program.patches,
                                         options.triage.step_budget);
  for (std::size_t i : corpus::CapPerBug(labels, options.per_bug_cap, options.rng_seed)) {
    explored[i].label = labels[i].bug;
    result.corpus.push_back(std::move(explored[i]));
    result.labels.push_back(std::move(labels[i]));
  }

  result.grouping = triage::GroupCrashes(result.corpus, {}, program.original, options.triage);
  result.groups = triage::MergeGroups(result.grouping.signatures, options.triage);
  std::vector<std::string> missed;
  for (const auto& m : result.grouping.missed) missed.push_back(m.crash_id);
  result.metrics = corpus::Score(result.groups, result.grouping.signatures, result.labels, missed);

  baselines::CoverageConfig coverage;
  coverage.step_budget = options.triage.step_budget;
  result.baselines.push_back(baselines::DedupCoverage(result.corpus, program.original, coverage));
  result.baselines.push_back(baselines::DedupStackHash(result.corpus, 1));
  result.baselines.push_back(baselines::DedupStackHash(result.corpus, 5));
  result.baselines.push_back(baselines::DedupCrashSite(result.corpus));
  return result;
}

void WritePipeline(const std::filesystem::path& dir, const PipelineResult& result) {
  io::WriteCorpus(dir / "corpus", result.corpus);
  io::WriteText(dir / "labels.json", io::LabelsJson(result.labels));
  io::WriteSignatureStore(dir / "signatures", result.grouping.signatures);
  io::WriteText(dir / "groups.json", io::GroupsJson(result.groups));
  io::WriteText(dir / "missed.json", io::MissedJson(result.grouping.missed));
  io::WriteText(dir / "baselines.json", io::DedupReportsJson(result.baselines));
}

}  // namespace fuzzeraid::cli
