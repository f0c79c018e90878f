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

#ifndef FUZZERAID_IO_STORE_H_
#define FUZZERAID_IO_STORE_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzeraid/baselines/baselines.h"
#include "fuzzeraid/common/error.h"
#include "fuzzeraid/corpus/corpus.h"
#include "fuzzeraid/minilang/ast.h"
#include "fuzzeraid/siggen/signature.h"
#include "fuzzeraid/triage/triage.h"

// On-disk artifacts. Every writer produces byte-identical output for equal
// input; readers throw Error(kIoError) for missing files and
// Error(kFormatError) for malformed ones. Layouts are in docs/formats.md.
namespace fuzzeraid::io {

namespace fs = std::filesystem;

std::string ReadText(const fs::path& path);
Bytes ReadBytes(const fs::path& path);
// Creates missing parent directories.
void WriteText(const fs::path& path, std::string_view text);

minilang::Program ReadProgram(const fs::path& path);

// <dir>/inputs/<id>.bin plus <dir>/manifest.json, in corpus order.
void WriteCorpus(const fs::path& dir, const std::vector<triage::CrashRecord>& corpus);
std::vector<triage::CrashRecord> ReadCorpus(const fs::path& dir);

// sig_<id>.ml-src and sig_<id>.json per signature. Reading returns them in
// id order, which is creation order for ids this library assigns.
void WriteSignatureStore(const fs::path& dir, const std::vector<siggen::FaultSignature>& sigs);
std::vector<siggen::FaultSignature> ReadSignatureStore(const fs::path& dir);

std::string GroupsJson(const std::vector<triage::FaultGroup>& groups);
std::vector<triage::FaultGroup> ParseGroups(std::string_view json);

std::string MissedJson(const std::vector<triage::MissedCrash>& missed);
std::vector<triage::MissedCrash> ParseMissed(std::string_view json);

std::string LabelsJson(const std::vector<corpus::GroundTruthLabel>& labels);
std::vector<corpus::GroundTruthLabel> ParseLabels(std::string_view json);

std::string DedupReportJson(const baselines::DedupReport& report);
std::string DedupReportsJson(const std::vector<baselines::DedupReport>& reports);

std::string MetricsJson(const corpus::Metrics& metrics);
std::string MetricsCsv(const corpus::Metrics& metrics);

// A fixture program directory: program.ml-src, seed_<n>.bin and
// patch_<n>.ml-src for n = 1, 2, ... Bug ids are <directory name>-<n>.
struct SuiteProgram {
  std::string name;
  minilang::Program original;
  std::vector<std::pair<std::string, Bytes>> seeds;  // (bug id, input)
  std::map<std::string, minilang::Program> patches;
};

SuiteProgram LoadSuiteProgram(const fs::path& dir);
// Every subdirectory holding a program.ml-src, sorted by name.
std::vector<fs::path> ListSuite(const fs::path& root);

}  // namespace fuzzeraid::io

#endif  // FUZZERAID_IO_STORE_H_
