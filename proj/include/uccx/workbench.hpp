// Run orchestration behind the uccx subcommands. Every function here is
// usable without the CLI; tools/uccx.cpp only parses flags and prints.

#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "uccx/annotation.hpp"
#include "uccx/checklist.hpp"
#include "uccx/corpus.hpp"
#include "uccx/llm.hpp"
#include "uccx/metrics.hpp"
#include "uccx/parser.hpp"
#include "uccx/prompt.hpp"
#include "uccx/records.hpp"
#include "uccx/report.hpp"

#ifndef UCCX_VERSION
#define UCCX_VERSION "0.0.0"
#endif

namespace uccx {

inline constexpr const char* kToolVersion = UCCX_VERSION;

class WorkbenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Run layout: <runs_root>/<run_id>/{manifest.json, predictions.json,
// metrics.*, defects.jsonl}

struct RunManifest {
  std::string run_id;
  std::string command;
  std::string corpus_path;
  std::string corpus_hash;
  std::string preset_id;
  std::string provider_id;
  std::string model_id;
  double temperature = 0.0;
  std::string embedder_id;
  std::string timestamp;
  std::string tool_version = kToolVersion;
};

inline json manifest_to_json(const RunManifest& m) {
  return json{{"run_id", m.run_id},         {"command", m.command},
              {"corpus_path", m.corpus_path}, {"corpus_hash", m.corpus_hash},
              {"preset_id", m.preset_id},   {"provider_id", m.provider_id},
              {"model_id", m.model_id},     {"temperature", m.temperature},
              {"embedder_id", m.embedder_id}, {"timestamp", m.timestamp},
              {"tool_version", m.tool_version}};
}

inline RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.run_id = j.at("run_id").get<std::string>();
  m.command = j.value("command", "");
  m.corpus_path = j.value("corpus_path", "");
  m.corpus_hash = j.value("corpus_hash", "");
  m.preset_id = j.value("preset_id", "");
  m.provider_id = j.value("provider_id", "");
  m.model_id = j.value("model_id", "");
  m.temperature = j.value("temperature", 0.0);
  m.embedder_id = j.value("embedder_id", "");
  m.timestamp = j.value("timestamp", "");
  m.tool_version = j.value("tool_version", "");
  return m;
}

inline bool valid_run_id(const std::string& id) {
  if (id.empty() || id.size() > 128 || id[0] == '.') return false;
  for (char c : id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) return false;
  }
  return true;
}

class RunDir {
 public:
  RunDir(fs::path runs_root, std::string run_id) : root_(std::move(runs_root)), id_(std::move(run_id)) {
    if (!valid_run_id(id_)) throw WorkbenchError("invalid run id '" + id_ + "'");
  }

  const std::string& id() const { return id_; }
  fs::path dir() const { return root_ / id_; }
  fs::path manifest() const { return dir() / "manifest.json"; }
  fs::path predictions() const { return dir() / "predictions.json"; }
  fs::path defects() const { return dir() / "defects.jsonl"; }
  fs::path metrics(const std::string& ext) const { return dir() / ("metrics." + ext); }

  bool exists() const { return fs::exists(manifest()); }
  RunManifest load_manifest() const { return manifest_from_json(io::read_json(manifest())); }
  void save_manifest(const RunManifest& m) const { io::write_json_atomic(manifest(), manifest_to_json(m)); }

 private:
  fs::path root_;
  std::string id_;
};

/// <UTC compact timestamp>-<suffix>, e.g. 20261015T101500Z-seed.
inline std::string new_run_id(const std::string& suffix) {
  std::string ts = io::utc_timestamp();  // 2026-10-15T10:15:00Z
  std::string compact;
  for (char c : ts) {
    if (c != '-' && c != ':') compact += c;
  }
  return suffix.empty() ? compact : compact + "-" + suffix;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateResult {
  std::optional<std::string> schema_error;
  std::vector<std::pair<std::string, Lint>> lints;  // (scenario id, lint)
  std::optional<Corpus> corpus;
};

inline ValidateResult cmd_validate(const fs::path& corpus_path) {
  ValidateResult r;
  try {
    r.corpus = load_corpus(corpus_path);
  } catch (const CorpusSchemaError& e) {
    r.schema_error = e.what();
    return r;
  } catch (const IoError& e) {
    r.schema_error = e.what();
    return r;
  }
  for (const auto& s : r.corpus->scenarios()) {
    for (auto& l : validate_scenario(s)) r.lints.emplace_back(s.id, std::move(l));
  }
  return r;
}

// ---------------------------------------------------------------------------
// extract

struct ExtractOptions {
  fs::path corpus_path;
  PromptPreset preset;
  std::shared_ptr<ChatProvider> provider;
  std::string model_id = "gpt-3.5-turbo";
  double temperature = 0.0;
  int max_output_tokens = 1024;
  fs::path runs_root = "runs";
  std::string run_id;  // generated when empty
  int workers = 2;
  std::vector<std::string> scenario_ids;  // empty = whole corpus
};

struct ExtractResult {
  RunDir run;
  RunManifest manifest;
  ComponentRecords predictions;
};

/// A scenario whose completion failed. The partial predictions file has
/// already been written with complete=false.
class ExtractError : public WorkbenchError {
 public:
  ExtractError(std::string scenario_id, const std::string& cause, fs::path partial)
      : WorkbenchError("scenario '" + scenario_id + "': " + cause),
        scenario_id_(std::move(scenario_id)),
        partial_(std::move(partial)) {}
  const std::string& scenario_id() const { return scenario_id_; }
  const fs::path& partial_file() const { return partial_; }

 private:
  std::string scenario_id_;
  fs::path partial_;
};

inline ChatRequest extraction_request(const ExtractOptions& o, const Scenario& s) {
  return {render(o.preset, s), o.model_id, o.temperature, o.max_output_tokens};
}

/// render -> complete -> parse for each scenario, fanned out over
/// `workers` threads. Output order is by scenario id regardless of timing.
inline ExtractResult cmd_extract(const ExtractOptions& o) {
  if (!o.provider) throw WorkbenchError("no provider configured");
  check_preset(o.preset);
  auto corpus = load_corpus(o.corpus_path);
  std::vector<const Scenario*> todo;
  if (o.scenario_ids.empty()) {
    for (const auto& s : corpus.scenarios()) todo.push_back(&s);
  } else {
    for (const auto& id : o.scenario_ids) {
      const auto* s = corpus.find(id);
      if (!s) throw WorkbenchError("unknown scenario '" + id + "'");
      todo.push_back(s);
    }
  }

  RunDir run(o.runs_root, o.run_id.empty() ? new_run_id(o.preset.id) : o.run_id);
  RunManifest m;
  m.run_id = run.id();
  m.command = "extract";
  m.corpus_path = o.corpus_path.string();
  m.corpus_hash = corpus_content_hash(o.corpus_path);
  m.preset_id = o.preset.id;
  m.provider_id = o.provider->id();
  m.model_id = o.model_id;
  m.temperature = o.temperature;
  m.timestamp = io::utc_timestamp();
  fs::create_directories(run.dir());
  run.save_manifest(m);

  ComponentRecords preds;
  preds.kind = RecordsKind::kPredictions;
  preds.run_id = run.id();
  std::mutex mu;
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failed_id;
  std::string failure;

  auto work = [&] {
    while (!failed) {
      size_t i = next++;
      if (i >= todo.size()) return;
      const auto& s = *todo[i];
      try {
        auto resp = o.provider->complete(extraction_request(o, s));
        auto report = parse_response(resp.text);
        std::lock_guard lock(mu);
        preds.entries[s.id] = {report.components, "parsed", report.warnings};
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        if (!failed.exchange(true)) {
          failed_id = s.id;
          failure = e.what();
        }
      }
    }
  };
  int n = std::clamp<int>(o.workers, 1, static_cast<int>(std::max<size_t>(todo.size(), 1)));
  std::vector<std::thread> threads;
  for (int t = 0; t < n; ++t) threads.emplace_back(work);
  for (auto& t : threads) t.join();

  preds.complete = !failed;
  save_records(preds, run.predictions());
  if (failed) throw ExtractError(failed_id, failure, run.predictions());
  return {run, m, preds};
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  fs::path ground_truth_path;
  fs::path predictions_path;
  Embedder* embedder = nullptr;
  fs::path runs_root = "runs";
  std::string run_id;            // defaults to the predictions file's run_id
  bool with_reference = false;   // also write the paper-reference comparison
  bool allow_incomplete = false;
};

struct EvaluateResult {
  std::string run_id;
  CorpusEvaluation evaluation;
  MetricTable table{};
  std::vector<fs::path> written;
};

inline EvaluateResult cmd_evaluate(const EvaluateOptions& o) {
  if (!o.embedder) throw WorkbenchError("no embedder configured");
  auto gt = load_records(o.ground_truth_path);
  auto pred = load_records(o.predictions_path);
  if (pred.kind == RecordsKind::kPredictions && !pred.complete && !o.allow_incomplete) {
    throw WorkbenchError(o.predictions_path.string() + " is marked incomplete");
  }
  std::string run_id = !o.run_id.empty() ? o.run_id : pred.run_id;
  if (run_id.empty()) run_id = new_run_id("evaluate");
  if (!pred.run_id.empty() && !o.run_id.empty() && pred.run_id != o.run_id) {
    throw WorkbenchError("predictions belong to run '" + pred.run_id + "', not '" + o.run_id + "'");
  }

  EvaluateResult r;
  r.run_id = run_id;
  r.evaluation = evaluate_corpus(gt.components(), pred.components(), *o.embedder);
  r.table = metric_table(r.evaluation.averages);

  RunDir run(o.runs_root, run_id);
  fs::create_directories(run.dir());
  RunManifest m;
  if (run.exists()) {
    m = run.load_manifest();
  } else {
    m.run_id = run_id;
    m.command = "evaluate";
    m.timestamp = io::utc_timestamp();
  }
  m.embedder_id = o.embedder->id();
  run.save_manifest(m);

  auto put = [&](const fs::path& p, const std::string& body) {
    io::write_file_atomic(p, body);
    r.written.push_back(p);
  };
  put(run.metrics("csv"), metrics_csv(r.table));
  put(run.metrics("json"), evaluation_to_json(r.evaluation, run_id).dump(2) + "\n");
  put(run.dir() / "metrics_detail.csv", metrics_detail_csv(r.evaluation));
  std::optional<PaperReference> ref;
  if (o.with_reference) ref = load_paper_reference();
  put(run.metrics("txt"), metrics_text(r.table, ref ? &ref->table7 : nullptr));
  if (ref) put(run.dir() / "metrics_vs_paper.csv", metrics_comparison_csv(r.table, ref->table7));
  return r;
}

// ---------------------------------------------------------------------------
// kappa / adjudicate

struct KappaResult {
  KappaRow kappa{};
  std::optional<std::string> problem;  // why no value could be computed
  size_t scenarios = 0;
  size_t raters = 0;
};

/// Per component over every scenario that has annotations.
inline KappaResult cmd_kappa(const Corpus& corpus, const std::vector<AnnotationSet>& sets) {
  KappaResult r;
  std::vector<Scenario> scenarios;
  for (const auto& [sid, group] : detail::group_by_scenario(sets)) {
    const auto* s = corpus.find(sid);
    if (!s) {
      r.problem = "annotations reference unknown scenario '" + sid + "'";
      return r;
    }
    scenarios.push_back(*s);
    r.raters = std::max(r.raters, group.size());
  }
  r.scenarios = scenarios.size();
  for (size_t k = 0; k < 7; ++k) {
    try {
      r.kappa[k] = fleiss_kappa(scenarios, sets, kAllComponents[k]);
    } catch (const AnnotationError& e) {
      r.problem = e.what();
      return r;
    }
  }
  return r;
}

inline ComponentRecords cmd_adjudicate(const Corpus& corpus, const std::vector<AnnotationSet>& sets) {
  std::map<std::string, GroundTruth> truth;
  for (const auto& [sid, group] : detail::group_by_scenario(sets)) {
    std::vector<AnnotationSet> copies;
    for (const auto* a : group) copies.push_back(*a);
    truth[sid] = adjudicate(corpus.at(sid), copies);
  }
  return ground_truth_records(truth);
}

// ---------------------------------------------------------------------------
// defects across runs

/// Summary over the given runs: one row per distinct preset (first-seen
/// order), scenarios = union of the runs' prediction ids.
inline DefectSummary runs_defect_summary(const fs::path& runs_root, const std::vector<std::string>& run_ids) {
  std::vector<std::string> prompt_ids;
  std::set<std::string> scenario_ids;
  std::vector<DefectRecord> records;
  for (const auto& id : run_ids) {
    RunDir run(runs_root, id);
    if (!run.exists()) throw WorkbenchError("unknown run '" + id + "'");
    auto m = run.load_manifest();
    if (std::find(prompt_ids.begin(), prompt_ids.end(), m.preset_id) == prompt_ids.end()) {
      prompt_ids.push_back(m.preset_id);
    }
    if (fs::exists(run.predictions())) {
      for (const auto& [sid, e] : load_records(run.predictions()).entries) scenario_ids.insert(sid);
    }
    for (auto& r : read_defect_lines(run.defects())) records.push_back(std::move(r));
  }
  return defect_summary(records, prompt_ids, {scenario_ids.begin(), scenario_ids.end()});
}

// ---------------------------------------------------------------------------
// fsck

/// Referential integrity of a runs tree. Returns one line per problem.
inline std::vector<std::string> cmd_fsck(const fs::path& runs_root) {
  std::vector<std::string> problems;
  if (!fs::exists(runs_root)) return problems;
  for (const auto& entry : fs::directory_iterator(runs_root)) {
    if (!entry.is_directory()) continue;
    auto id = entry.path().filename().string();
    auto where = [&](const std::string& f) { return id + "/" + f; };
    auto manifest = entry.path() / "manifest.json";
    if (!fs::exists(manifest)) {
      problems.push_back(where("manifest.json") + ": missing");
      continue;
    }
    try {
      auto m = manifest_from_json(io::read_json(manifest));
      if (m.run_id != id) problems.push_back(where("manifest.json") + ": run_id '" + m.run_id + "' does not match directory");
    } catch (const std::exception& e) {
      problems.push_back(where("manifest.json") + ": " + e.what());
      continue;
    }
    for (const auto& f : fs::directory_iterator(entry.path())) {
      auto name = f.path().filename().string();
      try {
        if (name == "predictions.json") {
          auto r = load_records(f.path());
          if (r.run_id != id) problems.push_back(where(name) + ": run_id '" + r.run_id + "' does not match");
        } else if (name == "metrics.json") {
          auto rid = io::read_json(f.path()).value("run_id", "");
          if (rid != id) problems.push_back(where(name) + ": run_id '" + rid + "' does not match");
        } else if (name == "defects.jsonl") {
          for (const auto& r : read_defect_lines(f.path())) {
            if (r.run_id != id) {
              problems.push_back(where(name) + ": record for " + r.scenario_id + "/" + r.qid + " names run '" +
                                 r.run_id + "'");
            }
          }
        }
      } catch (const std::exception& e) {
        problems.push_back(where(name) + ": " + e.what());
      }
    }
  }
  std::sort(problems.begin(), problems.end());
  return problems;
}

}  // namespace uccx
