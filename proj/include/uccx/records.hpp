// Ground-truth and prediction files: scenario id -> UCComponents, with
// provenance and parse warnings per entry.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uccx/annotation.hpp"
#include "uccx/components.hpp"
#include "uccx/io.hpp"
#include "uccx/json_schema.hpp"
#include "uccx/parser.hpp"

namespace uccx {

class RecordsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RecordsKind { kGroundTruth, kPredictions };

struct RecordEntry {
  UCComponents components;
  std::string source;  // adjudicated | single_annotator | parsed, may be empty
  std::vector<ParseWarning> warnings;
};

struct ComponentRecords {
  RecordsKind kind = RecordsKind::kPredictions;
  std::string run_id;
  bool complete = true;
  std::map<std::string, RecordEntry> entries;

  std::map<std::string, UCComponents> components() const {
    std::map<std::string, UCComponents> out;
    for (const auto& [id, e] : entries) out.emplace(id, e.components);
    return out;
  }
};

inline std::string source_name(GroundTruthSource s) {
  return s == GroundTruthSource::kAdjudicated ? "adjudicated" : "single_annotator";
}

inline ComponentRecords ground_truth_records(const std::map<std::string, GroundTruth>& truth) {
  ComponentRecords r;
  r.kind = RecordsKind::kGroundTruth;
  for (const auto& [id, gt] : truth) r.entries[id] = {gt.components, source_name(gt.source), {}};
  return r;
}

inline json records_to_json(const ComponentRecords& r) {
  json entries = json::object();
  for (const auto& [id, e] : r.entries) {
    json entry{{"components", e.components}};
    if (!e.source.empty()) entry["source"] = e.source;
    if (!e.warnings.empty()) {
      json ws = json::array();
      for (const auto& w : e.warnings) ws.push_back({{"kind", warning_name(w.kind)}, {"detail", w.detail}});
      entry["warnings"] = ws;
    }
    entries[id] = entry;
  }
  json doc{{"kind", r.kind == RecordsKind::kGroundTruth ? "ground_truth" : "predictions"},
           {"entries", entries}};
  if (!r.run_id.empty()) doc["run_id"] = r.run_id;
  if (r.kind == RecordsKind::kPredictions) doc["complete"] = r.complete;
  return doc;
}

inline ComponentRecords records_from_json(const json& doc) {
  static const JsonSchema schema = JsonSchema::bundled("components");
  auto violations = schema.validate(doc);
  if (!violations.empty()) {
    throw RecordsError("component file " + violations.front().pointer + ": " +
                       violations.front().message);
  }
  ComponentRecords r;
  r.kind = doc.at("kind") == "ground_truth" ? RecordsKind::kGroundTruth : RecordsKind::kPredictions;
  r.run_id = doc.value("run_id", "");
  r.complete = doc.value("complete", true);
  for (const auto& [id, entry] : doc.at("entries").items()) {
    RecordEntry e;
    e.components = entry.at("components").get<UCComponents>();
    e.source = entry.value("source", "");
    if (entry.contains("warnings")) {
      for (const auto& w : entry.at("warnings")) {
        e.warnings.push_back({*parse_warning_kind(w.at("kind").get<std::string>()),
                              w.at("detail").get<std::string>()});
      }
    }
    r.entries.emplace(id, std::move(e));
  }
  return r;
}

inline ComponentRecords load_records(const fs::path& path) {
  try {
    return records_from_json(io::read_json(path));
  } catch (const RecordsError& e) {
    throw RecordsError(path.string() + ": " + e.what());
  }
}

inline void save_records(const ComponentRecords& r, const fs::path& path) {
  io::write_json_atomic(path, records_to_json(r));
}

}  // namespace uccx
