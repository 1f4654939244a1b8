// Quality checklist for extracted use cases, inspector verdict storage and
// per-prompt defect counts.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "uccx/corpus.hpp"
#include "uccx/io.hpp"
#include "uccx/json_schema.hpp"

namespace uccx {

enum class QuestionCategory { kActor, kGoal, kDps, kSteps };
enum class Polarity { kDefectIfYes, kDefectIfNo };

inline std::string_view category_name(QuestionCategory c) {
  switch (c) {
    case QuestionCategory::kActor: return "actor";
    case QuestionCategory::kGoal: return "goal";
    case QuestionCategory::kDps: return "dps";
    case QuestionCategory::kSteps: return "steps";
  }
  return "";
}

inline std::string_view polarity_name(Polarity p) {
  return p == Polarity::kDefectIfYes ? "defect_if_yes" : "defect_if_no";
}

struct ChecklistQuestion {
  QuestionCategory category;
  std::string qid;
  std::string text;
  Polarity polarity;
};

class ChecklistError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The 16 questions. qids are frozen; Steps questions are numbered Q1-Q5 in
/// order of appearance.
inline const std::vector<ChecklistQuestion>& builtin_checklist() {
  using C = QuestionCategory;
  constexpr auto Y = Polarity::kDefectIfYes;
  constexpr auto N = Polarity::kDefectIfNo;
  static const std::vector<ChecklistQuestion> questions = {
      {C::kActor, "actor.Q1",
       "Are there any actors that are not identified in the extracted UC-User, UC-System, or UC-ET components?", Y},
      {C::kActor, "actor.Q2",
       "Are there any incorrect actors in the extracted UC-User, UC-System, or UC-ET components?", Y},
      {C::kActor, "actor.Q3",
       "Considering the extracted UC-User, UC-System, UC-ET, and UC-steps, are there actors not involved in at least one of the steps?", Y},
      {C::kActor, "actor.Q4",
       "Considering the extracted UC-User, UC-System, UC-ET, and UC-DPs, are there actors not involved in at least one of the data practices?", Y},
      {C::kGoal, "goal.Q1", "Is the right goal extracted from the scenario?", N},
      {C::kGoal, "goal.Q2",
       "Is the extracted UC-Goal, the goal of the UC-User (i.e., primary actor of the scenario) to be accomplished?", N},
      {C::kDps, "dps.Q1",
       "Are all the data practices extracted in UC-DPs component in the system boundary (i.e., scope)?", N},
      {C::kDps, "dps.Q2", "Should the data practice be considered a step?", Y},
      {C::kDps, "dps.Q3",
       "Is there any data practice in the extracted UC-DPs that does not contain a flow of personal information?", Y},
      {C::kDps, "dps.Q4", "Is it clear who is performing the action in the data practice?", N},
      {C::kDps, "dps.Q5", "Are there any data practices that are not identified in the extracted UC-DPs?", Y},
      {C::kSteps, "steps.Q1",
       "Are all the steps extracted in the extracted UC-Steps component in the system boundary (i.e., scope)?", N},
      {C::kSteps, "steps.Q2",
       "Is there any step in the extracted UC-Steps component that does not match the goal or doesn’t help accomplish the goal?", Y},
      {C::kSteps, "steps.Q3", "Is it clear which actor is operating each step?", N},
      {C::kSteps, "steps.Q4",
       "Do the steps in the extracted UC-Steps component contain any data practices?", Y},
      {C::kSteps, "steps.Q5", "Are there any steps that are not identified in the extracted UC-Steps?", Y},
  };
  return questions;
}

inline const ChecklistQuestion* find_question(const std::string& qid) {
  for (const auto& q : builtin_checklist()) {
    if (q.qid == qid) return &q;
  }
  return nullptr;
}

inline json checklist_to_json() {
  json out = json::array();
  for (const auto& q : builtin_checklist()) {
    out.push_back({{"category", category_name(q.category)},
                   {"qid", q.qid},
                   {"text", q.text},
                   {"polarity", polarity_name(q.polarity)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Records

struct DefectRecord {
  std::string run_id;
  std::string scenario_id;
  std::string prompt_id;
  std::string qid;
  bool answer_yes = false;
  bool is_defect = false;
  std::string note;
  std::string inspector_id;

  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  Key key() const { return {scenario_id, prompt_id, qid, inspector_id}; }
};

inline bool defect_for(const ChecklistQuestion& q, bool answer_yes) {
  return q.polarity == Polarity::kDefectIfYes ? answer_yes : !answer_yes;
}

inline json record_to_json(const DefectRecord& r) {
  json j{{"scenario_id", r.scenario_id},
         {"prompt_id", r.prompt_id},
         {"qid", r.qid},
         {"answer", r.answer_yes ? "yes" : "no"},
         {"is_defect", r.is_defect},
         {"inspector_id", r.inspector_id}};
  if (!r.run_id.empty()) j["run_id"] = r.run_id;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// Schema-checks the document and derives is_defect from the question's
/// polarity. A supplied is_defect that disagrees is rejected.
inline DefectRecord record_from_json(const json& j) {
  static const JsonSchema schema = JsonSchema::bundled("defects");
  auto violations = schema.validate(j);
  if (!violations.empty()) {
    throw ChecklistError("defect record " + violations.front().pointer + ": " +
                         violations.front().message);
  }
  DefectRecord r;
  r.run_id = j.value("run_id", "");
  r.scenario_id = j.at("scenario_id").get<std::string>();
  r.prompt_id = j.at("prompt_id").get<std::string>();
  r.qid = j.at("qid").get<std::string>();
  r.answer_yes = j.at("answer") == "yes";
  r.note = j.value("note", "");
  r.inspector_id = j.at("inspector_id").get<std::string>();
  const auto* q = find_question(r.qid);
  if (!q) throw ChecklistError("unknown question '" + r.qid + "'");
  r.is_defect = defect_for(*q, r.answer_yes);
  if (j.contains("is_defect") && j.at("is_defect").get<bool>() != r.is_defect) {
    throw ChecklistError("is_defect contradicts the answer for " + r.qid + " (" +
                         std::string(polarity_name(q->polarity)) + ")");
  }
  return r;
}

/// Known ids a record must reference. Empty sets accept anything.
struct DefectContext {
  std::set<std::string> scenario_ids;
  std::set<std::string> prompt_ids;
};

inline void check_record(const DefectRecord& r, const DefectContext& ctx) {
  const auto* q = find_question(r.qid);
  if (!q) throw ChecklistError("unknown question '" + r.qid + "'");
  if (defect_for(*q, r.answer_yes) != r.is_defect) {
    throw ChecklistError("is_defect contradicts the answer for " + r.qid);
  }
  if (!ctx.prompt_ids.empty() && !ctx.prompt_ids.count(r.prompt_id)) {
    throw ChecklistError("unknown preset '" + r.prompt_id + "'");
  }
  if (!ctx.scenario_ids.empty() && !ctx.scenario_ids.count(r.scenario_id)) {
    throw ChecklistError("unknown scenario '" + r.scenario_id + "'");
  }
  if (r.inspector_id.empty()) throw ChecklistError("inspector_id is empty");
}

/// Reads a JSON Lines defect file; later lines replace earlier ones that
/// share a key. Blank lines are skipped.
inline std::vector<DefectRecord> read_defect_lines(const fs::path& path) {
  std::map<DefectRecord::Key, size_t> position;
  std::vector<DefectRecord> out;
  if (!fs::exists(path)) return out;
  size_t lineno = 0;
  for (const auto& line : text::split_lines(io::read_file(path))) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    DefectRecord r;
    try {
      r = record_from_json(json::parse(line));
    } catch (const std::exception& e) {
      throw ChecklistError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    auto [it, fresh] = position.emplace(r.key(), out.size());
    if (fresh) {
      out.push_back(std::move(r));
    } else {
      out[it->second] = std::move(r);
    }
  }
  return out;
}

/// Upserting store backed by a JSON Lines file. Writes are serialized;
/// each record call appends one line.
class DefectStore {
 public:
  DefectStore(fs::path path, DefectContext ctx = {}) : path_(std::move(path)), ctx_(std::move(ctx)) {
    for (auto& r : read_defect_lines(path_)) {
      index_[r.key()] = records_.size();
      records_.push_back(std::move(r));
    }
  }

  const fs::path& path() const { return path_; }

  DefectRecord record(DefectRecord r) {
    check_record(r, ctx_);
    std::lock_guard lock(mu_);
    if (!path_.parent_path().empty()) fs::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot append to " + path_.string());
    out << record_to_json(r).dump() << "\n";
    out.flush();
    if (!out) throw IoError("write failed for " + path_.string());
    auto [it, fresh] = index_.emplace(r.key(), records_.size());
    if (fresh) {
      records_.push_back(r);
    } else {
      records_[it->second] = r;
    }
    return r;
  }

  std::vector<DefectRecord> snapshot() const {
    std::lock_guard lock(mu_);
    return records_;
  }

 private:
  fs::path path_;
  DefectContext ctx_;
  mutable std::mutex mu_;
  std::vector<DefectRecord> records_;
  std::map<DefectRecord::Key, size_t> index_;
};

// ---------------------------------------------------------------------------
// Summary

struct DefectSummary {
  std::vector<std::string> prompt_ids;
  std::vector<std::string> qids;  // checklist order
  size_t scenario_count = 0;
  std::map<std::pair<std::string, std::string>, size_t> counts;  // (prompt, qid)

  size_t at(const std::string& prompt_id, const std::string& qid) const {
    auto it = counts.find({prompt_id, qid});
    return it == counts.end() ? 0 : it->second;
  }
};

/// Per (prompt, question): number of listed scenarios with at least one
/// defect verdict from any inspector. Records are expected deduplicated by
/// key (latest wins), as DefectStore and read_defect_lines produce them.
inline DefectSummary defect_summary(const std::vector<DefectRecord>& records,
                                    const std::vector<std::string>& prompt_ids,
                                    const std::vector<std::string>& scenario_ids) {
  DefectSummary s;
  s.prompt_ids = prompt_ids;
  s.scenario_count = scenario_ids.size();
  for (const auto& q : builtin_checklist()) s.qids.push_back(q.qid);
  std::set<std::string> prompts(prompt_ids.begin(), prompt_ids.end());
  std::set<std::string> scenarios(scenario_ids.begin(), scenario_ids.end());
  std::set<std::tuple<std::string, std::string, std::string>> flagged;
  for (const auto& r : records) {
    if (r.is_defect && prompts.count(r.prompt_id) && scenarios.count(r.scenario_id)) {
      flagged.insert({r.prompt_id, r.qid, r.scenario_id});
    }
  }
  for (const auto& p : prompt_ids) {
    for (const auto& q : s.qids) s.counts[{p, q}] = 0;
  }
  for (const auto& [p, q, sid] : flagged) ++s.counts[{p, q}];
  return s;
}

// ---------------------------------------------------------------------------
// Sampling

/// Uniform integer in [0, n) from raw 64-bit draws; unlike
/// std::uniform_int_distribution the result is the same on every platform.
inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
  uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// One scenario per distinct category label (stores merged), in label order.
inline std::vector<std::string> sample_by_category(const Corpus& c, uint64_t seed) {
  if (c.empty()) throw ChecklistError("cannot sample from an empty corpus");
  std::map<std::string, std::vector<std::string>> by_category;
  for (const auto& s : c.scenarios()) by_category[s.category].push_back(s.id);
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (auto& [category, ids] : by_category) {
    std::sort(ids.begin(), ids.end());
    out.push_back(ids[uniform_below(rng, ids.size())]);
  }
  return out;
}

}  // namespace uccx
