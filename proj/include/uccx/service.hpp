// Local HTTP service for the annotation and inspection UI.
//
//   GET  /api/scenarios                          corpus summary list
//   GET  /api/scenarios/{id}                     one scenario
//   GET  /api/annotations/{sid}/{aid}            stored annotation set
//   PUT  /api/annotations/{sid}/{aid}            replace it (spans validated)
//   GET  /api/kappa[?component=goal]             agreement over saved sets
//   GET  /api/predictions/{run_id}/{sid}         prediction beside ground truth
//   GET  /api/checklist                          the 16 questions
//   POST /api/defects                            record one verdict
//   GET  /api/summary/defects?runs=a,b           defect counts per preset
//
// Bodies are JSON in the same shapes as the files on disk.

#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "httplib.h"
#include "uccx/annotation.hpp"
#include "uccx/checklist.hpp"
#include "uccx/corpus.hpp"
#include "uccx/prompt.hpp"
#include "uccx/records.hpp"
#include "uccx/report.hpp"
#include "uccx/workbench.hpp"

namespace uccx {

struct ServiceConfig {
  fs::path corpus_path;
  fs::path annotations_path;   // created on first PUT if absent
  fs::path ground_truth_path;  // optional
  fs::path runs_root = "runs";
  fs::path web_root;           // optional static bundle
  fs::path presets_file;       // optional extra presets
  std::string host = "127.0.0.1";
};

class Service {
 public:
  explicit Service(ServiceConfig config) : config_(std::move(config)) {
    corpus_ = load_corpus(config_.corpus_path);
    if (!config_.annotations_path.empty() && fs::exists(config_.annotations_path)) {
      for (auto& a : load_annotations(config_.annotations_path)) {
        auto key = std::make_pair(a.scenario_id, a.annotator_id);
        annotations_[key] = std::move(a);
      }
    }
    if (!config_.ground_truth_path.empty() && fs::exists(config_.ground_truth_path)) {
      ground_truth_ = load_records(config_.ground_truth_path);
    }
    for (const auto& p : available_presets(config_.presets_file)) preset_ids_.insert(p.id);
    routes();
  }

  ~Service() { stop(); }

  /// Binds and serves on a background thread. Port 0 picks a free port.
  int start(int port = 0) {
    int bound = port == 0 ? server_.bind_to_any_port(config_.host) : (server_.bind_to_port(config_.host, port) ? port : -1);
    if (bound < 0) throw WorkbenchError("cannot bind " + config_.host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return bound;
  }

  /// Blocks until stopped.
  void run(int port) {
    if (!server_.listen(config_.host, port)) {
      throw WorkbenchError("cannot listen on " + config_.host + ":" + std::to_string(port));
    }
  }

  void stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

 private:
  static void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void send_error(httplib::Response& res, int status, const std::string& message,
                         const std::vector<std::string>& problems = {}) {
    json body{{"error", message}};
    if (!problems.empty()) body["problems"] = problems;
    send_json(res, status, body);
  }

  static std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      send_error(res, 400, std::string("malformed JSON: ") + e.what());
      return std::nullopt;
    }
  }

  std::vector<AnnotationSet> annotation_list() const {
    std::vector<AnnotationSet> out;
    for (const auto& [key, a] : annotations_) out.push_back(a);
    return out;
  }

  void routes() {
    server_.Get("/api/scenarios", [this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& s : corpus_.scenarios()) {
        list.push_back({{"id", s.id},
                        {"app_name", s.app_name},
                        {"platform", platform_name(s.platform)},
                        {"category", s.category},
                        {"screen_title", s.screen_title}});
      }
      send_json(res, 200, list);
    });

    server_.Get(R"(/api/scenarios/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const auto* s = corpus_.find(req.matches[1]);
      if (!s) return send_error(res, 404, "unknown scenario '" + std::string(req.matches[1]) + "'");
      send_json(res, 200, json(*s));
    });

    server_.Get(R"(/api/annotations/([^/]+)/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::string sid = req.matches[1];
      std::string aid = req.matches[2];
      if (!corpus_.contains(sid)) return send_error(res, 404, "unknown scenario '" + sid + "'");
      std::lock_guard lock(annotations_mu_);
      auto it = annotations_.find({sid, aid});
      if (it == annotations_.end()) return send_error(res, 404, "no annotation by '" + aid + "' for '" + sid + "'");
      if (auto u = updated_at_.find({sid, aid}); u != updated_at_.end()) res.set_header("X-Updated-At", u->second);
      send_json(res, 200, json(it->second));
    });

    server_.Put(R"(/api/annotations/([^/]+)/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::string sid = req.matches[1];
      std::string aid = req.matches[2];
      const auto* scenario = corpus_.find(sid);
      if (!scenario) return send_error(res, 404, "unknown scenario '" + sid + "'");
      auto body = parse_body(req, res);
      if (!body) return;
      if (!body->is_object()) return send_error(res, 400, "annotation body must be an object");
      if (!body->contains("scenario_id")) (*body)["scenario_id"] = sid;
      if (!body->contains("annotator_id")) (*body)["annotator_id"] = aid;
      static const JsonSchema set_schema = [] {
        auto doc = io::read_json(io::schema_dir() / "annotations.schema.json");
        json item = doc.at("items");
        item["$defs"] = doc.value("$defs", json::object());
        return JsonSchema(item);
      }();
      auto violations = set_schema.validate(*body);
      if (!violations.empty()) {
        std::vector<std::string> problems;
        for (const auto& v : violations) problems.push_back(v.pointer + ": " + v.message);
        return send_error(res, 422, "annotation does not match the schema", problems);
      }
      auto set = body->get<AnnotationSet>();
      if (set.scenario_id != sid || set.annotator_id != aid) {
        return send_error(res, 422, "body ids do not match the request path");
      }
      auto problems = annotation_problems(*scenario, set);
      if (!problems.empty()) return send_error(res, 422, "invalid spans", problems);

      std::lock_guard lock(annotations_mu_);
      annotations_[{sid, aid}] = set;
      auto stamp = io::utc_timestamp();
      updated_at_[{sid, aid}] = stamp;
      if (!config_.annotations_path.empty()) save_annotations(annotation_list(), config_.annotations_path);
      res.set_header("X-Updated-At", stamp);
      send_json(res, 200, json(set));
    });

    server_.Get("/api/kappa", [this](const httplib::Request& req, httplib::Response& res) {
      std::optional<ComponentKind> only;
      if (req.has_param("component")) {
        only = parse_component(req.get_param_value("component"));
        if (!only) return send_error(res, 400, "unknown component '" + req.get_param_value("component") + "'");
      }
      KappaResult r;
      {
        std::lock_guard lock(annotations_mu_);
        r = cmd_kappa(corpus_, annotation_list());
      }
      if (r.problem || r.scenarios == 0) {
        return send_error(res, 409, r.problem.value_or("no annotations saved yet"));
      }
      json comps = json::object();
      for (size_t k = 0; k < 7; ++k) {
        if (only && *only != kAllComponents[k]) continue;
        comps[std::string(component_key(kAllComponents[k]))] = {{"kappa", *r.kappa[k]},
                                                                {"band", kappa_band(*r.kappa[k])}};
      }
      send_json(res, 200, {{"scenarios", r.scenarios}, {"raters", r.raters}, {"components", comps}});
    });

    server_.Get(R"(/api/predictions/([^/]+)/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::string run_id = req.matches[1];
      std::string sid = req.matches[2];
      if (!valid_run_id(run_id)) return send_error(res, 400, "invalid run id");
      RunDir run(config_.runs_root, run_id);
      if (!run.exists() || !fs::exists(run.predictions())) return send_error(res, 404, "unknown run '" + run_id + "'");
      auto preds = load_records(run.predictions());
      auto it = preds.entries.find(sid);
      if (it == preds.entries.end()) return send_error(res, 404, "no prediction for '" + sid + "'");
      json body{{"run_id", run_id},
                {"scenario_id", sid},
                {"prompt_id", run.load_manifest().preset_id},
                {"prediction", it->second.components},
                {"warnings", it->second.warnings},
                {"ground_truth", nullptr}};
      if (ground_truth_) {
        if (auto g = ground_truth_->entries.find(sid); g != ground_truth_->entries.end()) {
          body["ground_truth"] = g->second.components;
        }
      }
      send_json(res, 200, body);
    });

    server_.Get("/api/checklist", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, checklist_to_json());
    });

    server_.Post("/api/defects", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      DefectRecord r;
      try {
        r = record_from_json(*body);
      } catch (const ChecklistError& e) {
        return send_error(res, 422, e.what());
      }
      if (r.run_id.empty()) return send_error(res, 422, "run_id is required");
      if (!valid_run_id(r.run_id)) return send_error(res, 422, "invalid run id");
      RunDir run(config_.runs_root, r.run_id);
      if (!run.exists()) return send_error(res, 422, "unknown run '" + r.run_id + "'");
      try {
        auto stored = store_for(run).record(r);
        send_json(res, 201, record_to_json(stored));
      } catch (const ChecklistError& e) {
        send_error(res, 422, e.what());
      }
    });

    server_.Get("/api/summary/defects", [this](const httplib::Request& req, httplib::Response& res) {
      std::vector<std::string> runs;
      for (const auto& piece : text::split_lines(req.get_param_value("runs"))) {
        std::string cur;
        for (char c : piece + ",") {
          if (c == ',') {
            if (!cur.empty()) runs.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
      }
      if (runs.empty()) return send_error(res, 400, "runs parameter is required");
      for (const auto& id : runs) {
        if (!valid_run_id(id)) return send_error(res, 400, "invalid run id '" + id + "'");
      }
      try {
        auto s = runs_defect_summary(config_.runs_root, runs);
        auto body = defect_summary_to_json(s);
        body["runs"] = runs;
        body["csv"] = defect_summary_csv(s);
        send_json(res, 200, body);
      } catch (const WorkbenchError& e) {
        send_error(res, 404, e.what());
      }
    });

    if (!config_.web_root.empty() && fs::is_directory(config_.web_root)) {
      server_.set_mount_point("/", config_.web_root.string());
    }

    server_.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      send_error(res, 500, what);
    });
  }

  DefectStore& store_for(const RunDir& run) {
    std::lock_guard lock(stores_mu_);
    auto it = stores_.find(run.id());
    if (it == stores_.end()) {
      DefectContext ctx{std::set<std::string>(), preset_ids_};
      auto ids = corpus_.ids();
      ctx.scenario_ids.insert(ids.begin(), ids.end());
      it = stores_.emplace(run.id(), std::make_unique<DefectStore>(run.defects(), ctx)).first;
    }
    return *it->second;
  }

  ServiceConfig config_;
  Corpus corpus_;
  std::optional<ComponentRecords> ground_truth_;
  std::set<std::string> preset_ids_;

  std::mutex annotations_mu_;
  std::map<std::pair<std::string, std::string>, AnnotationSet> annotations_;
  std::map<std::pair<std::string, std::string>, std::string> updated_at_;

  std::mutex stores_mu_;
  std::map<std::string, std::unique_ptr<DefectStore>> stores_;

  httplib::Server server_;
  std::thread thread_;
};

}  // namespace uccx
