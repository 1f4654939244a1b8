// uccx: command-line front end for the use case extraction workbench.

#include <csignal>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uccx/embedding_live.hpp"
#include "uccx/http_client.hpp"
#include "uccx/service.hpp"
#include "uccx/workbench.hpp"

namespace {

using namespace uccx;

fs::path sample_path(const std::string& name) { return io::data_dir() / "sample" / name; }

struct Reports {
  fs::path dir;
  std::string stem;

  void write(const std::string& txt, const std::string& csv, const json& doc) const {
    std::cout << txt;
    if (dir.empty()) return;
    fs::create_directories(dir);
    io::write_file_atomic(dir / (stem + ".txt"), txt);
    io::write_file_atomic(dir / (stem + ".csv"), csv);
    io::write_json_atomic(dir / (stem + ".json"), doc);
    std::cout << "wrote " << (dir / stem).string() << ".{txt,csv,json}\n";
  }
};

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::string cur;
    for (char c : s + ",") {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  return out;
}

std::map<std::string, GroundTruth> truth_from_records(const ComponentRecords& r) {
  std::map<std::string, GroundTruth> out;
  for (const auto& [id, e] : r.entries) {
    out[id] = {id, e.components,
               e.source == "single_annotator" ? GroundTruthSource::kSingleAnnotator : GroundTruthSource::kAdjudicated};
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Use case component extraction workbench"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string corpus = sample_path("corpus.json").string();
  std::string annotations = sample_path("annotations.json").string();
  std::string ground_truth = sample_path("ground_truth.json").string();
  std::string runs_root = "runs";
  std::string run_id;
  std::string out;
  bool reference = false;

  // validate
  auto* validate = app.add_subcommand("validate", "Schema-check a corpus and report survey lints");
  validate->add_option("--corpus", corpus, "Corpus JSON file")->capture_default_str();

  // extract
  ExtractOptions ex;
  std::string preset_id = "seed";
  std::string presets_file;
  std::string provider_kind = "mock";
  std::string fixtures;
  std::string cache = sample_path("replay").string();
  std::string record_cache;
  HttpEndpointConfig endpoint;
  endpoint.url = "https://api.openai.com/v1/chat/completions";
  std::vector<std::string> only;
  auto* extract = app.add_subcommand("extract", "Extract use case components with a prompt preset");
  extract->add_option("--corpus", corpus, "Corpus JSON file")->capture_default_str();
  extract->add_option("--preset", preset_id, "Prompt preset id")->capture_default_str();
  extract->add_option("--presets", presets_file, "Extra presets file");
  extract->add_option("--provider", provider_kind, "Chat provider")
      ->check(CLI::IsMember({"live", "replay", "mock"}))
      ->capture_default_str();
  extract->add_option("--ground-truth", ground_truth, "Ground truth echoed by the mock provider")
      ->capture_default_str();
  extract->add_option("--fixtures", fixtures, "Mock fixture file (scenario id -> response text)");
  extract->add_option("--cache", cache, "Replay cache directory")->capture_default_str();
  extract->add_option("--record-cache", record_cache, "Record every response into this cache");
  extract->add_option("--model", ex.model_id, "Model id")->capture_default_str();
  extract->add_option("--temperature", ex.temperature, "Sampling temperature")->capture_default_str();
  extract->add_option("--max-output-tokens", ex.max_output_tokens)->capture_default_str();
  extract->add_option("--endpoint", endpoint.url, "Chat completions URL (live)")->capture_default_str();
  extract->add_option("--max-in-flight", endpoint.max_in_flight)->capture_default_str();
  extract->add_option("--workers", ex.workers)->capture_default_str();
  extract->add_option("--scenario", only, "Restrict to these scenario ids");
  extract->add_option("--run-id", run_id, "Run id (generated when omitted)");
  extract->add_option("--out", runs_root, "Runs directory")->capture_default_str();

  // evaluate
  std::string predictions;
  std::string embedder_kind = "bag";
  size_t dim = 1024;
  std::string embedding_cache;
  std::string embedding_model = "text-embedding-3-large";
  HttpEndpointConfig embed_endpoint;
  embed_endpoint.url = "https://api.openai.com/v1/embeddings";
  bool allow_incomplete = false;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
  evaluate->add_option("--ground-truth", ground_truth)->capture_default_str();
  evaluate->add_option("--predictions", predictions, "Predictions file (default: the run's)");
  evaluate->add_option("--run-id", run_id, "Run id");
  evaluate->add_option("--out", runs_root, "Runs directory")->capture_default_str();
  evaluate->add_option("--embedder", embedder_kind)->check(CLI::IsMember({"live", "bag"}))->capture_default_str();
  evaluate->add_option("--dim", dim, "Embedding dimension")->capture_default_str();
  evaluate->add_option("--embedding-cache", embedding_cache, "Vector cache directory (live)");
  evaluate->add_option("--embedding-model", embedding_model)->capture_default_str();
  evaluate->add_option("--endpoint", embed_endpoint.url, "Embeddings URL (live)")->capture_default_str();
  evaluate->add_flag("--reference", reference, "Show paper-reference values alongside");
  evaluate->add_flag("--allow-incomplete", allow_incomplete, "Score a partial predictions file");

  // study1
  auto* study1_cmd = app.add_subcommand("study1", "Count scenarios with goal, data practices and steps");
  study1_cmd->add_option("--ground-truth", ground_truth)->capture_default_str();
  study1_cmd->add_option("--out", out, "Write study1.{txt,csv,json} here");
  study1_cmd->add_flag("--reference", reference, "Show paper-reference counts alongside");

  // kappa
  auto* kappa = app.add_subcommand("kappa", "Token-level Fleiss' kappa per component");
  kappa->add_option("--corpus", corpus)->capture_default_str();
  kappa->add_option("--annotations", annotations)->capture_default_str();
  kappa->add_option("--out", out, "Write kappa.{txt,csv,json} here");
  kappa->add_flag("--reference", reference, "Show paper-reference kappas alongside");

  // adjudicate
  auto* adjudicate_cmd = app.add_subcommand("adjudicate", "Majority-vote annotations into ground truth");
  adjudicate_cmd->add_option("--corpus", corpus)->capture_default_str();
  adjudicate_cmd->add_option("--annotations", annotations)->capture_default_str();
  adjudicate_cmd->add_option("--out", out, "Ground truth output file")->required();

  // sample
  uint64_t seed = 0;
  auto* sample = app.add_subcommand("sample", "Pick one scenario per category");
  sample->add_option("--corpus", corpus)->capture_default_str();
  sample->add_option("--seed", seed)->capture_default_str();
  sample->add_option("--out", out, "Write the ids as a JSON array");

  // inspect-export
  std::vector<std::string> runs;
  auto* inspect = app.add_subcommand("inspect-export", "Defect counts per preset for inspected runs");
  inspect->add_option("--runs", runs, "Run ids (comma separated or repeated)");
  inspect->add_option("--runs-dir", runs_root, "Runs directory")->capture_default_str();
  inspect->add_option("--out", out, "Write defects_summary.{txt,csv,json} here");
  inspect->add_flag("--reference", reference, "Summarize the bundled paper-reference records instead");

  // serve
  int port = 8765;
  std::string host = "127.0.0.1";
  std::string web = (fs::path(UCCX_DEFAULT_DATA_DIR).parent_path() / "web").string();
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API and UI bundle");
  serve->add_option("--corpus", corpus)->capture_default_str();
  serve->add_option("--annotations", annotations)->capture_default_str();
  serve->add_option("--ground-truth", ground_truth)->capture_default_str();
  serve->add_option("--presets", presets_file);
  serve->add_option("--out", runs_root, "Runs directory")->capture_default_str();
  serve->add_option("--web", web, "Static UI directory")->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();

  // fsck
  auto* fsck = app.add_subcommand("fsck", "Check that every run artifact names an existing run");
  fsck->add_option("--out", runs_root, "Runs directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      auto r = cmd_validate(corpus);
      if (r.schema_error) {
        std::cerr << "schema error: " << *r.schema_error << "\n";
        return 1;
      }
      for (const auto& [id, lint] : r.lints) std::cout << id << ": " << lint_name(lint.code) << " (" << lint.detail << ")\n";
      std::cout << r.corpus->size() << " scenarios, 0 schema errors, " << r.lints.size() << " lints\n";
      return 0;
    }

    if (*extract) {
      auto all = available_presets(presets_file);
      ex.preset = find_preset(all, preset_id);
      ex.corpus_path = corpus;
      ex.runs_root = runs_root;
      ex.run_id = run_id;
      ex.scenario_ids = split_commas(only);
      std::shared_ptr<ChatProvider> provider;
      if (provider_kind == "mock") {
        auto c = load_corpus(corpus);
        if (!fixtures.empty()) {
          provider = std::make_shared<MockProvider>(c, load_fixtures(fixtures));
        } else {
          provider = std::make_shared<MockProvider>(
              MockProvider::from_ground_truth(c, truth_from_records(load_records(ground_truth))));
        }
      } else if (provider_kind == "replay") {
        provider = std::make_shared<ReplayProvider>(ReplayCache(cache));
      } else {
        provider = std::make_shared<LiveChatProvider>(endpoint);
        ex.workers = std::max(ex.workers, endpoint.max_in_flight);
      }
      if (!record_cache.empty()) provider = std::make_shared<RecordingProvider>(provider, ReplayCache(record_cache));
      ex.provider = provider;
      try {
        auto r = cmd_extract(ex);
        size_t warned = 0;
        for (const auto& [id, e] : r.predictions.entries) warned += !e.warnings.empty();
        std::cout << "run " << r.run.id() << ": " << r.predictions.entries.size() << " scenarios extracted with preset '"
                  << ex.preset.id << "' (" << warned << " with parse warnings)\n"
                  << "wrote " << r.run.predictions().string() << "\n";
      } catch (const ExtractError& e) {
        std::cerr << "extract failed: " << e.what() << "\npartial results kept in " << e.partial_file().string()
                  << " (marked incomplete)\n";
        return 2;
      }
      return 0;
    }

    if (*evaluate) {
      std::unique_ptr<Embedder> embedder;
      if (embedder_kind == "bag") {
        embedder = bag_embedder(dim);
      } else {
        if (embedding_cache.empty()) {
          embedder = std::make_unique<LiveEmbedder>(embed_endpoint, embedding_model, dim);
        } else {
          // Without a credential the cache alone serves as a replay source.
          std::shared_ptr<Embedder> live;
          if (const char* key = std::getenv(embed_endpoint.api_key_env.c_str()); key && *key) {
            live = std::make_shared<LiveEmbedder>(embed_endpoint, embedding_model, dim);
          }
          embedder = std::make_unique<CachedEmbedder>("live:" + embedding_model, dim,
                                                      EmbeddingCache(embedding_cache), live);
        }
      }
      EvaluateOptions o;
      o.ground_truth_path = ground_truth;
      if (predictions.empty()) {
        if (run_id.empty()) throw WorkbenchError("give --predictions or --run-id");
        predictions = RunDir(runs_root, run_id).predictions().string();
      }
      o.predictions_path = predictions;
      o.embedder = embedder.get();
      o.runs_root = runs_root;
      o.run_id = run_id;
      o.with_reference = reference;
      o.allow_incomplete = allow_incomplete;
      auto r = cmd_evaluate(o);
      std::cout << io::read_file(RunDir(runs_root, r.run_id).metrics("txt"));
      for (const auto& p : r.written) std::cout << "wrote " << p.string() << "\n";
      return 0;
    }

    if (*study1_cmd) {
      auto r = study1(load_records(ground_truth).components());
      std::optional<PaperReference> ref;
      if (reference) ref = load_paper_reference();
      Reports{out, "study1"}.write(study1_text(r, ref ? &ref->table8 : nullptr), study1_csv(r), study1_to_json(r));
      return 0;
    }

    if (*kappa) {
      auto c = load_corpus(corpus);
      auto r = cmd_kappa(c, load_annotations(annotations));
      if (r.problem) {
        std::cerr << "kappa: " << *r.problem << "\n";
        return 1;
      }
      std::optional<PaperReference> ref;
      if (reference) ref = load_paper_reference();
      json doc{{"scenarios", r.scenarios}, {"raters", r.raters}};
      for (size_t k = 0; k < 7; ++k) doc["kappa"][std::string(component_key(kAllComponents[k]))] = *r.kappa[k];
      Reports{out, "kappa"}.write(kappa_text(r.kappa, ref ? &ref->table3 : nullptr), kappa_csv(r.kappa), doc);
      return 0;
    }

    if (*adjudicate_cmd) {
      auto c = load_corpus(corpus);
      auto gt = cmd_adjudicate(c, load_annotations(annotations));
      save_records(gt, out);
      std::cout << "wrote ground truth for " << gt.entries.size() << " scenarios to " << out << "\n";
      return 0;
    }

    if (*sample) {
      auto ids = sample_by_category(load_corpus(corpus), seed);
      for (const auto& id : ids) std::cout << id << "\n";
      if (!out.empty()) io::write_json_atomic(out, json(ids));
      return 0;
    }

    if (*inspect) {
      DefectSummary s;
      if (reference) {
        s = reference_defect_summary(load_paper_reference());
      } else {
        auto ids = split_commas(runs);
        if (ids.empty()) throw WorkbenchError("give --runs or --reference");
        s = runs_defect_summary(runs_root, ids);
      }
      Reports{out, "defects_summary"}.write(defect_summary_text(s), defect_summary_csv(s), defect_summary_to_json(s));
      return 0;
    }

    if (*serve) {
      ServiceConfig cfg;
      cfg.corpus_path = corpus;
      cfg.annotations_path = annotations;
      cfg.ground_truth_path = ground_truth;
      cfg.runs_root = runs_root;
      cfg.web_root = web;
      cfg.presets_file = presets_file;
      cfg.host = host;
      Service service(cfg);
      std::cout << "serving on http://" << host << ":" << port << "\n" << std::flush;
      service.run(port);
      return 0;
    }

    if (*fsck) {
      auto problems = cmd_fsck(runs_root);
      for (const auto& p : problems) std::cout << p << "\n";
      std::cout << problems.size() << " problems\n";
      return problems.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
