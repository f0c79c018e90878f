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

#include <algorithm>
#include <map>
#include <random>

#include "fuzzeraid/corpus/corpus.h"

namespace fuzzeraid::corpus {
namespace {

// Majority label among `members`, ties to the lower bug id. Unlabeled
// members do not vote.
std::optional<std::string> Majority(const std::vector<std::string>& members,
                                    const std::map<std::string, std::optional<std::string>>& labels) {
  std::map<std::string, std::size_t> votes;
  for (const auto& m : members) {
    const auto& bug = labels.at(m);
    if (bug) ++votes[*bug];
  }
  std::optional<std::string> best;
  std::size_t best_votes = 0;
  for (const auto& [bug, n] : votes) {  // ascending bug id, so ties keep the first
    if (n > best_votes) {
      best = bug;
      best_votes = n;
    }
  }
  return best;
}

}  // namespace

std::vector<GroundTruthLabel> LabelWithPatches(
    const std::vector<triage::CrashRecord>& corpus, const minilang::Program& original,
    const std::map<std::string, minilang::Program>& patches, std::size_t step_budget) {
  minilang::ExecuteOptions exec;
  exec.step_budget = step_budget;
  exec.record_coverage = false;
  auto compile = [](const minilang::Program& p) {
    minilang::CompileResult r = minilang::Compile(p);
    if (!r.ok()) throw Error(ErrorCode::kInvalidProgram, r.message);
    return r.program;
  };
  auto base = compile(original);
  std::vector<std::pair<std::string, std::shared_ptr<const minilang::CompiledProgram>>> fixed;
  for (const auto& [bug, program] : patches) fixed.emplace_back(bug, compile(program));

  std::vector<GroundTruthLabel> labels;
  labels.reserve(corpus.size());
  for (const auto& crash : corpus) {
    GroundTruthLabel label{crash.id, std::nullopt, {}};
    if (minilang::Execute(*base, crash.input, exec).crashed()) {
      for (const auto& [bug, program] : fixed) {
        if (!minilang::Execute(*program, crash.input, exec).crashed()) label.fixed_by.push_back(bug);
      }
      if (label.fixed_by.size() == 1) label.bug = label.fixed_by.front();
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<std::size_t> CapPerBug(const std::vector<GroundTruthLabel>& labels, std::size_t cap,
                                   std::uint64_t rng_seed) {
  std::map<std::optional<std::string>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < labels.size(); ++i) buckets[labels[i].bug].push_back(i);
  std::mt19937_64 rng(rng_seed);
  std::vector<std::size_t> kept;
  for (auto& [bug, positions] : buckets) {
    if (positions.size() > cap) {
      // Fisher-Yates by hand: std::shuffle is not portable across libraries.
      for (std::size_t i = positions.size() - 1; i > 0; --i) {
        std::swap(positions[i], positions[rng() % (i + 1)]);
      }
      positions.resize(cap);
    }
    kept.insert(kept.end(), positions.begin(), positions.end());
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

Metrics Score(const std::vector<triage::FaultGroup>& groups,
              const std::vector<siggen::FaultSignature>& signatures,
              const std::vector<GroundTruthLabel>& labels,
              const std::vector<std::string>& missed) {
  std::map<std::string, std::optional<std::string>> by_crash;
  for (const auto& l : labels) by_crash[l.crash_id] = l.bug;
  auto require = [&](const std::string& id) {
    if (by_crash.count(id) == 0) throw Error(ErrorCode::kLabelMissing, "no label for crash " + id);
  };
  for (const auto& g : groups) {
    for (const auto& m : g.members) require(m);
  }
  for (const auto& m : missed) require(m);

  std::map<std::string, BugMetrics> per_bug;
  auto bug_row = [&](const std::string& bug) -> BugMetrics& {
    BugMetrics& row = per_bug[bug];
    row.bug = bug;
    return row;
  };
  Metrics metrics;

  for (const auto& g : groups) {
    std::optional<std::string> owner = Majority(g.members, by_crash);
    if (owner) {
      ++bug_row(*owner).groups;
    } else {
      ++metrics.unattributed_groups;
    }
    for (const auto& m : g.members) {
      const auto& bug = by_crash.at(m);
      if (!bug) {
        ++metrics.unknown;
        continue;
      }
      BugMetrics& row = bug_row(*bug);
      ++row.crashes;
      if (bug == owner) {
        ++row.correct;
      } else {
        ++row.incorrect;
      }
    }
  }
  for (const auto& m : missed) {
    const auto& bug = by_crash.at(m);
    if (!bug) {
      ++metrics.unknown;
      continue;
    }
    BugMetrics& row = bug_row(*bug);
    ++row.crashes;
    ++row.missed;
  }
  for (const auto& sig : signatures) {
    for (const auto& m : sig.members) {
      if (by_crash.count(m) == 0) {
        throw Error(ErrorCode::kLabelMissing, "no label for crash " + m);
      }
    }
    if (auto owner = Majority(sig.members, by_crash)) ++bug_row(*owner).fault_sigs;
  }

  metrics.totals.bug = "total";
  for (auto& [bug, row] : per_bug) {
    metrics.totals.crashes += row.crashes;
    metrics.totals.fault_sigs += row.fault_sigs;
    metrics.totals.groups += row.groups;
    metrics.totals.correct += row.correct;
    metrics.totals.incorrect += row.incorrect;
    metrics.totals.missed += row.missed;
    metrics.bugs.push_back(std::move(row));
  }
  return metrics;
}

Metrics Combine(const std::vector<Metrics>& parts) {
  std::map<std::string, BugMetrics> rows;
  Metrics out;
  out.totals.bug = "total";
  auto add = [](BugMetrics& into, const BugMetrics& row) {
    into.crashes += row.crashes;
    into.fault_sigs += row.fault_sigs;
    into.groups += row.groups;
    into.correct += row.correct;
    into.incorrect += row.incorrect;
    into.missed += row.missed;
  };
  for (const auto& m : parts) {
    for (const auto& row : m.bugs) {
      BugMetrics& r = rows[row.bug];
      r.bug = row.bug;
      add(r, row);
    }
    add(out.totals, m.totals);
    out.unknown += m.unknown;
    out.unattributed_groups += m.unattributed_groups;
  }
  for (auto& [bug, row] : rows) out.bugs.push_back(std::move(row));
  return out;
}

}  // namespace fuzzeraid::corpus
