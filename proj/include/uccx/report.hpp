// Report shapes: metric, presence, defect and agreement tables in text, CSV
// and JSON form, plus the bundled paper-reference fixtures.

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "uccx/checklist.hpp"
#include "uccx/components.hpp"
#include "uccx/io.hpp"
#include "uccx/metrics.hpp"
#include "uccx/prompt.hpp"
#include "uccx/records.hpp"

namespace uccx {

inline std::string fixed(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& fields) {
  std::vector<std::string> quoted;
  for (const auto& f : fields) quoted.push_back(csv_field(f));
  return text::join(quoted, ",") + "\n";
}

/// Numbers right-aligned, everything else left-aligned, two-space gutters.
inline std::string text_table(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width(header.size(), 0);
  auto widen = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], text::length(r[i]));
  };
  widen(header);
  for (const auto& r : rows) widen(r);
  auto is_number = [](const std::string& v) {
    return !v.empty() && v.find_first_not_of("0123456789.-") == std::string::npos;
  };
  std::vector<bool> right(header.size(), !rows.empty());
  right[0] = false;
  for (const auto& r : rows) {
    for (size_t i = 1; i < r.size() && i < right.size(); ++i) right[i] = right[i] && (r[i].empty() || is_number(r[i]));
  }
  auto line = [&](const std::vector<std::string>& r) {
    std::string out;
    for (size_t i = 0; i < r.size(); ++i) {
      std::string pad(width[i] - text::length(r[i]), ' ');
      if (i) out += "  ";
      out += right[i] ? pad + r[i] : r[i] + pad;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(header);
  size_t total = 0;
  for (auto w : width) total += w;
  out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

// ---------------------------------------------------------------------------
// Metric table

inline const std::vector<std::string>& metric_columns() {
  static const std::vector<std::string> cols = {"UC Component", "EM", "F1 without Pre-Processing",
                                                "F1 with Pre-Processing", "SM"};
  return cols;
}

/// Per component: em, f1, f1_pre, sm. Used for both current and reference rows.
using MetricTable = std::array<std::array<double, 4>, 7>;

inline MetricTable metric_table(const ComponentRow& averages) {
  MetricTable t{};
  for (size_t k = 0; k < 7; ++k) t[k] = {averages[k].em, averages[k].f1, averages[k].f1_pre, averages[k].sm};
  return t;
}

inline std::string metrics_csv(const MetricTable& t) {
  std::string out = csv_line(metric_columns());
  for (size_t k = 0; k < 7; ++k) {
    out += csv_line({std::string(component_label(kAllComponents[k])), fixed(t[k][0], 6), fixed(t[k][1], 6),
                     fixed(t[k][2], 6), fixed(t[k][3], 6)});
  }
  return out;
}

inline std::string metrics_text(const MetricTable& t, const MetricTable* reference = nullptr) {
  auto header = metric_columns();
  if (reference) {
    for (auto c : {"EM", "F1 without Pre-Processing", "F1 with Pre-Processing", "SM"}) {
      header.push_back(std::string("Paper ") + c);
    }
  }
  std::vector<std::vector<std::string>> rows;
  for (size_t k = 0; k < 7; ++k) {
    std::vector<std::string> r{std::string(component_label(kAllComponents[k]))};
    for (double v : t[k]) r.push_back(fixed(v));
    if (reference) {
      for (double v : (*reference)[k]) r.push_back(fixed(v));
    }
    rows.push_back(std::move(r));
  }
  return text_table(header, rows);
}

/// Current values beside paper-reference values, one row per component.
inline std::string metrics_comparison_csv(const MetricTable& current, const MetricTable& reference) {
  auto header = metric_columns();
  for (auto c : {"EM", "F1 without Pre-Processing", "F1 with Pre-Processing", "SM"}) {
    header.push_back(std::string("Paper ") + c);
  }
  std::string out = csv_line(header);
  for (size_t k = 0; k < 7; ++k) {
    std::vector<std::string> r{std::string(component_label(kAllComponents[k]))};
    for (double v : current[k]) r.push_back(fixed(v, 6));
    for (double v : reference[k]) r.push_back(fixed(v, 3));
    out += csv_line(r);
  }
  return out;
}

inline std::string metrics_detail_csv(const CorpusEvaluation& ev) {
  std::string out = csv_line({"scenario_id", "component", "em", "precision", "recall", "f1", "f1_pre", "sm"});
  for (const auto& [id, row] : ev.per_scenario) {
    for (size_t k = 0; k < 7; ++k) {
      const auto& s = row[k];
      out += csv_line({id, std::string(component_key(kAllComponents[k])), fixed(s.em, 0), fixed(s.precision, 6),
                       fixed(s.recall, 6), fixed(s.f1, 6), fixed(s.f1_pre, 6), fixed(s.sm, 6)});
    }
  }
  return out;
}

inline json score_to_json(const ComponentScore& s) {
  return json{{"em", s.em},         {"precision", s.precision}, {"recall", s.recall},
              {"f1", s.f1},         {"f1_pre", s.f1_pre},       {"sm", s.sm}};
}

inline json evaluation_to_json(const CorpusEvaluation& ev, const std::string& run_id) {
  json averages = json::object();
  json per = json::object();
  for (size_t k = 0; k < 7; ++k) averages[std::string(component_key(kAllComponents[k]))] = score_to_json(ev.averages[k]);
  for (const auto& [id, row] : ev.per_scenario) {
    json r = json::object();
    for (size_t k = 0; k < 7; ++k) r[std::string(component_key(kAllComponents[k]))] = score_to_json(row[k]);
    per[id] = r;
  }
  return json{{"run_id", run_id},
              {"embedder_id", ev.embedder_id},
              {"scenario_count", ev.per_scenario.size()},
              {"averages", averages},
              {"per_scenario", per}};
}

// ---------------------------------------------------------------------------
// Presence counts

struct Study1Report {
  size_t corpus_size = 0;
  size_t goal = 0;
  size_t data_practices = 0;
  size_t steps = 0;
};

inline Study1Report study1(const std::map<std::string, UCComponents>& gts) {
  Study1Report r;
  r.corpus_size = gts.size();
  for (const auto& [id, c] : gts) {
    r.goal += !c.goal.empty();
    r.data_practices += !c.data_practices.empty();
    r.steps += !c.steps.empty();
  }
  return r;
}

inline std::string study1_csv(const Study1Report& r) {
  return csv_line({"", "UC-Goal", "UC-DPs", "UC-Steps"}) +
         csv_line({"Frequency", std::to_string(r.goal), std::to_string(r.data_practices), std::to_string(r.steps)});
}

inline std::string study1_text(const Study1Report& r, const Study1Report* reference = nullptr) {
  std::vector<std::vector<std::string>> rows{{"Frequency", std::to_string(r.goal),
                                              std::to_string(r.data_practices), std::to_string(r.steps),
                                              std::to_string(r.corpus_size)}};
  if (reference) {
    rows.push_back({"Paper frequency", std::to_string(reference->goal), std::to_string(reference->data_practices),
                    std::to_string(reference->steps), std::to_string(reference->corpus_size)});
  }
  return text_table({"", "UC-Goal", "UC-DPs", "UC-Steps", "Scenarios"}, rows);
}

inline json study1_to_json(const Study1Report& r) {
  return json{{"corpus_size", r.corpus_size},
              {"goal", r.goal},
              {"data_practices", r.data_practices},
              {"steps", r.steps}};
}

// ---------------------------------------------------------------------------
// Defect table (data practice and step questions)

inline std::vector<std::string> defect_table_qids() {
  std::vector<std::string> out;
  for (const auto& q : builtin_checklist()) {
    if (q.category == QuestionCategory::kDps || q.category == QuestionCategory::kSteps) out.push_back(q.qid);
  }
  return out;
}

inline std::vector<std::string> defect_table_header() {
  std::vector<std::string> h{"Prompt"};
  for (const auto& qid : defect_table_qids()) {
    auto dot = qid.find('.');
    h.push_back((qid.substr(0, dot) == "dps" ? "UC-DPs " : "UC-Steps ") + qid.substr(dot + 1));
  }
  return h;
}

inline std::vector<std::vector<std::string>> defect_table_rows(const DefectSummary& s) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : s.prompt_ids) {
    std::vector<std::string> r{preset_display_name(p)};
    for (const auto& qid : defect_table_qids()) r.push_back(std::to_string(s.at(p, qid)));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string defect_summary_csv(const DefectSummary& s) {
  std::string out = csv_line(defect_table_header());
  for (const auto& r : defect_table_rows(s)) out += csv_line(r);
  return out;
}

inline std::string defect_summary_text(const DefectSummary& s) {
  return text_table(defect_table_header(), defect_table_rows(s));
}

inline json defect_summary_to_json(const DefectSummary& s) {
  json prompts = json::object();
  for (const auto& p : s.prompt_ids) {
    json row = json::object();
    for (const auto& q : s.qids) row[q] = s.at(p, q);
    prompts[p] = row;
  }
  return json{{"scenario_count", s.scenario_count}, {"prompt_ids", s.prompt_ids}, {"counts", prompts}};
}

// ---------------------------------------------------------------------------
// Agreement

/// Landis and Koch interpretation bands.
inline std::string kappa_band(double k) {
  if (k < 0) return "poor";
  if (k <= 0.20) return "slight";
  if (k <= 0.40) return "fair";
  if (k <= 0.60) return "moderate";
  if (k <= 0.80) return "substantial";
  return "almost perfect";
}

using KappaRow = std::array<std::optional<double>, 7>;

inline std::string kappa_csv(const KappaRow& row) {
  std::vector<std::string> header, values;
  for (size_t k = 0; k < 7; ++k) {
    header.emplace_back(component_label(kAllComponents[k]));
    values.push_back(row[k] ? fixed(*row[k], 6) : "");
  }
  return csv_line(header) + csv_line(values);
}

inline std::string kappa_text(const KappaRow& row, const KappaRow* reference = nullptr) {
  std::vector<std::vector<std::string>> rows;
  for (size_t k = 0; k < 7; ++k) {
    std::vector<std::string> r{std::string(component_label(kAllComponents[k])),
                               row[k] ? fixed(*row[k]) : "n/a", row[k] ? kappa_band(*row[k]) : ""};
    if (reference) r.push_back((*reference)[k] ? fixed(*(*reference)[k], 2) : "");
    rows.push_back(std::move(r));
  }
  std::vector<std::string> header{"UC Component", "Kappa", "Band"};
  if (reference) header.emplace_back("Paper");
  return text_table(header, rows);
}

// ---------------------------------------------------------------------------
// Paper-reference fixtures (data/paper_reference)

struct PaperReference {
  MetricTable table7{};
  Study1Report table8;
  KappaRow table3{};
  std::vector<std::string> table9_prompt_ids;
  std::vector<std::string> table9_scenario_ids;
  std::vector<DefectRecord> table9_records;
};

inline PaperReference load_paper_reference(const fs::path& dir = io::data_dir() / "paper_reference") {
  PaperReference ref;
  auto t7 = io::read_json(dir / "table7.json").at("rows");
  for (size_t k = 0; k < 7; ++k) {
    const auto& r = t7.at(std::string(component_key(kAllComponents[k])));
    ref.table7[k] = {r.at("em").get<double>(), r.at("f1").get<double>(), r.at("f1_pre").get<double>(),
                     r.at("sm").get<double>()};
  }
  auto t8 = io::read_json(dir / "table8.json");
  ref.table8.corpus_size = t8.at("corpus_size").get<size_t>();
  ref.table8.goal = t8.at("goal").get<size_t>();
  ref.table8.data_practices = t8.at("data_practices").get<size_t>();
  ref.table8.steps = t8.at("steps").get<size_t>();
  auto t3 = io::read_json(dir / "table3.json").at("kappa");
  for (size_t k = 0; k < 7; ++k) ref.table3[k] = t3.at(std::string(component_key(kAllComponents[k]))).get<double>();
  auto t9 = io::read_json(dir / "table9.json");
  ref.table9_prompt_ids = t9.at("prompt_ids").get<std::vector<std::string>>();
  ref.table9_scenario_ids = t9.at("scenario_ids").get<std::vector<std::string>>();
  ref.table9_records = read_defect_lines(dir / t9.at("records").get<std::string>());
  return ref;
}

inline DefectSummary reference_defect_summary(const PaperReference& ref) {
  return defect_summary(ref.table9_records, ref.table9_prompt_ids, ref.table9_scenario_ids);
}

}  // namespace uccx
