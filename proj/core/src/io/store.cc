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

#include "fuzzeraid/io/store.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "fuzzeraid/minilang/parser.h"
#include "fuzzeraid/minilang/render.h"

namespace fuzzeraid::io {
namespace {

using Json = nlohmann::ordered_json;

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Json Parse(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormatError, what + ": " + e.what());
  }
}

// Field access with kFormatError instead of nlohmann's exceptions.
template <typename T>
T Get(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kFormatError, what + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormatError, what + ": field '" + key + "': " + e.what());
  }
}

const Json& Array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::kFormatError, what + ": expected a list");
  return j;
}

Json FingerprintToJson(const minilang::FailureFingerprint& fp) {
  Json stack = Json::array();
  for (const auto& f : fp.stack) stack.push_back({{"function", f.function}, {"line", f.line}});
  return {{"kind", std::string(minilang::FailureKindName(fp.kind))},
          {"location", {{"function", fp.location.function}, {"line", fp.location.line}}},
          {"stack", stack}};
}

minilang::FailureFingerprint FingerprintFromJson(const Json& j, const std::string& what) {
  minilang::FailureFingerprint fp;
  auto kind = minilang::ParseFailureKind(Get<std::string>(j, "kind", what));
  if (!kind) throw Error(ErrorCode::kFormatError, what + ": unknown failure kind");
  fp.kind = *kind;
  const Json loc = Get<Json>(j, "location", what);
  fp.location = {Get<std::string>(loc, "function", what), Get<int>(loc, "line", what)};
  const Json stack = Get<Json>(j, "stack", what);
  for (const auto& f : Array(stack, what)) {
    fp.stack.push_back({Get<std::string>(f, "function", what), Get<int>(f, "line", what)});
  }
  return fp;
}

// Ids become file names; keep them to a safe alphabet.
void CheckId(const std::string& id, const std::string& what) {
  static const std::regex kSafe("[A-Za-z0-9_.-]+");
  if (!std::regex_match(id, kSafe) || id == "." || id == "..") {
    throw Error(ErrorCode::kFormatError, what + ": bad id '" + id + "'");
  }
}

Json MetricsRow(const corpus::BugMetrics& row) {
  return {{"bug", row.bug},         {"crashes", row.crashes},     {"fault_sigs", row.fault_sigs},
          {"groups", row.groups},   {"correct", row.correct},     {"incorrect", row.incorrect},
          {"missed", row.missed}};
}

}  // namespace

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Bytes ReadBytes(const fs::path& path) { return ToBytes(ReadText(path)); }

void WriteText(const fs::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

minilang::Program ReadProgram(const fs::path& path) {
  return minilang::Parse(ReadText(path), minilang::ParseMode::kExecutable);
}

void WriteCorpus(const fs::path& dir, const std::vector<triage::CrashRecord>& corpus) {
  Json manifest = Json::array();
  for (const auto& c : corpus) {
    CheckId(c.id, "corpus");
    const std::string file = "inputs/" + c.id + ".bin";
    WriteText(dir / file, std::string_view(reinterpret_cast<const char*>(c.input.data()),
                                           c.input.size()));
    Json entry = {{"id", c.id},
                  {"file", file},
                  {"original_fingerprint", FingerprintToJson(c.original_fingerprint)}};
    if (c.label) entry["label"] = *c.label;
    manifest.push_back(std::move(entry));
  }
  WriteText(dir / "manifest.json", Dump(manifest));
}

std::vector<triage::CrashRecord> ReadCorpus(const fs::path& dir) {
  const std::string what = (dir / "manifest.json").string();
  Json manifest = Parse(ReadText(dir / "manifest.json"), what);
  std::vector<triage::CrashRecord> corpus;
  for (const auto& entry : Array(manifest, what)) {
    triage::CrashRecord c;
    c.id = Get<std::string>(entry, "id", what);
    CheckId(c.id, what);
    c.input = ReadBytes(dir / Get<std::string>(entry, "file", what));
    c.original_fingerprint =
        FingerprintFromJson(Get<Json>(entry, "original_fingerprint", what), what);
    if (entry.contains("label") && !entry["label"].is_null()) {
      c.label = Get<std::string>(entry, "label", what);
    }
    corpus.push_back(std::move(c));
  }
  return corpus;
}

void WriteSignatureStore(const fs::path& dir, const std::vector<siggen::FaultSignature>& sigs) {
  fs::create_directories(dir);
  for (const auto& s : sigs) {
    CheckId(s.id, "signature");
    WriteText(dir / ("sig_" + s.id + ".ml-src"), minilang::Render(s.program));
    Json j = {{"id", s.id},
              {"origin_crash", s.origin_crash},
              {"reference_fingerprint", FingerprintToJson(s.reference_fingerprint)},
              {"members", s.members},
              {"minimal", s.minimal},
              {"oracle_runs", s.oracle_runs}};
    WriteText(dir / ("sig_" + s.id + ".json"), Dump(j));
  }
}

std::vector<siggen::FaultSignature> ReadSignatureStore(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoError, "no such directory " + dir.string());
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("sig_", 0) == 0 && entry.path().extension() == ".json") {
      ids.push_back(name.substr(4, name.size() - 4 - 5));
    }
  }
  std::sort(ids.begin(), ids.end());
  std::vector<siggen::FaultSignature> sigs;
  for (const auto& id : ids) {
    const fs::path meta = dir / ("sig_" + id + ".json");
    const std::string what = meta.string();
    Json j = Parse(ReadText(meta), what);
    siggen::FaultSignature s;
    s.id = Get<std::string>(j, "id", what);
    if (s.id != id) throw Error(ErrorCode::kFormatError, what + ": id does not match file name");
    s.program = ReadProgram(dir / ("sig_" + id + ".ml-src"));
    s.origin_crash = Get<std::string>(j, "origin_crash", what);
    s.reference_fingerprint = FingerprintFromJson(Get<Json>(j, "reference_fingerprint", what), what);
    s.members = Get<std::vector<std::string>>(j, "members", what);
    s.minimal = Get<bool>(j, "minimal", what);
    s.oracle_runs = Get<std::size_t>(j, "oracle_runs", what);
    sigs.push_back(std::move(s));
  }
  return sigs;
}

std::string GroupsJson(const std::vector<triage::FaultGroup>& groups) {
  Json out = Json::array();
  for (const auto& g : groups) {
    out.push_back({{"group_id", g.id}, {"signature_ids", g.signature_ids}, {"crash_ids", g.members}});
  }
  return Dump(out);
}

std::vector<triage::FaultGroup> ParseGroups(std::string_view json) {
  const std::string what = "groups";
  std::vector<triage::FaultGroup> groups;
  const Json doc = Parse(json, what);
  for (const auto& g : Array(doc, what)) {
    groups.push_back({Get<std::string>(g, "group_id", what),
                      Get<std::vector<std::string>>(g, "signature_ids", what),
                      Get<std::vector<std::string>>(g, "crash_ids", what)});
  }
  return groups;
}

std::string MissedJson(const std::vector<triage::MissedCrash>& missed) {
  Json out = Json::array();
  for (const auto& m : missed) out.push_back({{"crash_id", m.crash_id}, {"reason", m.reason}});
  return Dump(out);
}

std::vector<triage::MissedCrash> ParseMissed(std::string_view json) {
  const std::string what = "missed";
  std::vector<triage::MissedCrash> missed;
  const Json doc = Parse(json, what);
  for (const auto& m : Array(doc, what)) {
    missed.push_back({Get<std::string>(m, "crash_id", what), Get<std::string>(m, "reason", what)});
  }
  return missed;
}

std::string LabelsJson(const std::vector<corpus::GroundTruthLabel>& labels) {
  Json out = Json::array();
  for (const auto& l : labels) {
    out.push_back({{"crash_id", l.crash_id},
                   {"bug", l.bug ? Json(*l.bug) : Json(nullptr)},
                   {"fixed_by", l.fixed_by}});
  }
  return Dump(out);
}

std::vector<corpus::GroundTruthLabel> ParseLabels(std::string_view json) {
  const std::string what = "labels";
  std::vector<corpus::GroundTruthLabel> labels;
  const Json doc = Parse(json, what);
  for (const auto& l : Array(doc, what)) {
    corpus::GroundTruthLabel label;
    label.crash_id = Get<std::string>(l, "crash_id", what);
    CheckId(label.crash_id, what);
    Json bug = Get<Json>(l, "bug", what);
    if (!bug.is_null()) label.bug = Get<std::string>(l, "bug", what);
    if (l.contains("fixed_by")) label.fixed_by = Get<std::vector<std::string>>(l, "fixed_by", what);
    labels.push_back(std::move(label));
  }
  return labels;
}

namespace {

Json DedupToJson(const baselines::DedupReport& report) {
  Json groups = Json::array();
  for (const auto& g : report.groups) {
    groups.push_back({{"representative", g.representative}, {"crash_ids", g.members}});
  }
  return {{"strategy", report.strategy}, {"group_count", report.group_count}, {"groups", groups}};
}

}  // namespace

std::string DedupReportJson(const baselines::DedupReport& report) {
  return Dump(DedupToJson(report));
}

std::string DedupReportsJson(const std::vector<baselines::DedupReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(DedupToJson(r));
  return Dump(out);
}

std::string MetricsJson(const corpus::Metrics& metrics) {
  Json bugs = Json::array();
  for (const auto& row : metrics.bugs) bugs.push_back(MetricsRow(row));
  return Dump({{"bugs", bugs},
               {"unknown", {{"crashes", metrics.unknown}, {"groups", metrics.unattributed_groups}}},
               {"total", MetricsRow(metrics.totals)}});
}

std::string MetricsCsv(const corpus::Metrics& metrics) {
  std::ostringstream out;
  auto row = [&out](const corpus::BugMetrics& r) {
    out << r.bug << ',' << r.crashes << ',' << r.fault_sigs << ',' << r.groups << ','
        << r.correct << ',' << r.incorrect << ',' << r.missed << '\n';
  };
  out << "bug,crashes,fault_sigs,groups,correct,incorrect,missed\n";
  for (const auto& r : metrics.bugs) row(r);
  corpus::BugMetrics unknown;
  unknown.bug = "<unknown>";
  unknown.crashes = metrics.unknown;
  unknown.groups = metrics.unattributed_groups;
  row(unknown);
  row(metrics.totals);
  return out.str();
}

SuiteProgram LoadSuiteProgram(const fs::path& dir) {
  SuiteProgram p;
  p.name = fs::absolute(dir).lexically_normal().filename().string();
  if (p.name.empty()) p.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
  p.original = ReadProgram(dir / "program.ml-src");
  for (int n = 1;; ++n) {
    const fs::path seed = dir / ("seed_" + std::to_string(n) + ".bin");
    if (!fs::exists(seed)) break;
    const std::string bug = p.name + "-" + std::to_string(n);
    p.seeds.emplace_back(bug, ReadBytes(seed));
    p.patches.emplace(bug, ReadProgram(dir / ("patch_" + std::to_string(n) + ".ml-src")));
  }
  if (p.seeds.empty()) throw Error(ErrorCode::kFormatError, dir.string() + ": no seed_1.bin");
  return p;
}

std::vector<fs::path> ListSuite(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(ErrorCode::kIoError, "no such directory " + root.string());
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "program.ml-src")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

}  // namespace fuzzeraid::io
