// Scenario corpus: loading, schema validation, survey-constraint lints and
// per-store category counts.

#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uccx/io.hpp"
#include "uccx/json_schema.hpp"
#include "uccx/text.hpp"

namespace uccx {

enum class Platform { kApple, kGoogle };

inline std::string_view platform_name(Platform p) {
  return p == Platform::kApple ? "apple" : "google";
}

struct Scenario {
  std::string id;
  std::string app_name;
  std::string store_url;
  Platform platform = Platform::kApple;
  std::string category;
  std::string screen_title;
  std::string text;
  std::vector<std::string> author_declared_info_types;

  bool operator==(const Scenario&) const = default;
};

inline void to_json(json& j, const Scenario& s) {
  j = json{{"id", s.id},
           {"app_name", s.app_name},
           {"store_url", s.store_url},
           {"platform", platform_name(s.platform)},
           {"category", s.category},
           {"screen_title", s.screen_title},
           {"text", s.text},
           {"author_declared_info_types", s.author_declared_info_types}};
}

inline void from_json(const json& j, Scenario& s) {
  s.id = j.at("id").get<std::string>();
  s.app_name = j.at("app_name").get<std::string>();
  s.store_url = j.at("store_url").get<std::string>();
  s.platform = j.at("platform").get<std::string>() == "apple" ? Platform::kApple
                                                              : Platform::kGoogle;
  s.category = j.at("category").get<std::string>();
  s.screen_title = j.at("screen_title").get<std::string>();
  s.text = j.at("text").get<std::string>();
  s.author_declared_info_types =
      j.at("author_declared_info_types").get<std::vector<std::string>>();
}

/// Raised for malformed corpus files; the message names record index and field.
class CorpusSchemaError : public std::runtime_error {
 public:
  CorpusSchemaError(size_t record, std::string field, const std::string& detail)
      : std::runtime_error("record " + std::to_string(record) + ", field '" + field +
                           "': " + detail),
        record_(record),
        field_(std::move(field)) {}
  size_t record() const { return record_; }
  const std::string& field() const { return field_; }

 private:
  size_t record_;
  std::string field_;
};

/// Immutable after construction.
class Corpus {
 public:
  Corpus() = default;

  /// Throws CorpusSchemaError on duplicate ids or blank text.
  explicit Corpus(std::vector<Scenario> scenarios) : scenarios_(std::move(scenarios)) {
    for (size_t i = 0; i < scenarios_.size(); ++i) {
      const auto& s = scenarios_[i];
      if (text::trim(s.text).empty()) throw CorpusSchemaError(i, "text", "blank scenario text");
      if (!index_.emplace(s.id, i).second) {
        throw CorpusSchemaError(i, "id", "duplicate id '" + s.id + "'");
      }
    }
  }

  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  size_t size() const { return scenarios_.size(); }
  bool empty() const { return scenarios_.empty(); }
  bool contains(const std::string& id) const { return index_.count(id) > 0; }

  const Scenario* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &scenarios_[it->second];
  }

  const Scenario& at(const std::string& id) const {
    if (const auto* s = find(id)) return *s;
    throw std::out_of_range("unknown scenario '" + id + "'");
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& s : scenarios_) out.push_back(s.id);
    return out;
  }

  bool operator==(const Corpus& o) const { return scenarios_ == o.scenarios_; }

 private:
  std::vector<Scenario> scenarios_;
  std::unordered_map<std::string, size_t> index_;
};

inline json corpus_to_json(const Corpus& c) { return json(c.scenarios()); }

/// Validates against schemas/corpus.schema.json, then materializes.
inline Corpus corpus_from_json(const json& doc) {
  static const JsonSchema schema = JsonSchema::bundled("corpus");
  auto violations = schema.validate(doc);
  if (!violations.empty()) {
    const auto& v = violations.front();
    // Pointer shape is "/<index>/<field>" for record-level problems.
    size_t record = 0;
    std::string field = "<document>";
    if (v.pointer.size() > 1) {
      auto slash = v.pointer.find('/', 1);
      record = std::stoul(v.pointer.substr(1, slash - 1));
      field = slash == std::string::npos ? "<record>" : v.pointer.substr(slash + 1);
    }
    throw CorpusSchemaError(record, field, v.message);
  }
  return Corpus(doc.get<std::vector<Scenario>>());
}

inline Corpus load_corpus(const fs::path& path) { return corpus_from_json(io::read_json(path)); }

inline void save_corpus(const Corpus& c, const fs::path& path) {
  io::write_json_atomic(path, corpus_to_json(c));
}

/// sha256 of the file bytes, recorded in run manifests.
inline std::string corpus_content_hash(const fs::path& path) {
  return io::sha256_hex(io::read_file(path));
}

enum class LintCode { kWordCountBelow150, kEmptyScreenTitle, kInfoTypesIncomplete };

inline std::string_view lint_name(LintCode c) {
  switch (c) {
    case LintCode::kWordCountBelow150: return "WORD_COUNT_BELOW_150";
    case LintCode::kEmptyScreenTitle: return "EMPTY_SCREEN_TITLE";
    case LintCode::kInfoTypesIncomplete: return "INFO_TYPES_INCOMPLETE";
  }
  return "";
}

struct Lint {
  LintCode code;
  std::string detail;
  bool operator==(const Lint& o) const { return code == o.code; }
};

inline constexpr size_t kMinScenarioWords = 150;
inline constexpr size_t kRequiredInfoTypes = 3;

/// Survey-constraint checks. Advisory only; never throws.
inline std::vector<Lint> validate_scenario(const Scenario& s) {
  std::vector<Lint> lints;
  size_t words = text::word_count(s.text);
  if (words < kMinScenarioWords) {
    lints.push_back({LintCode::kWordCountBelow150, std::to_string(words) + " words"});
  }
  if (text::trim(s.screen_title).empty()) {
    lints.push_back({LintCode::kEmptyScreenTitle, "screen title is empty"});
  }
  if (s.author_declared_info_types.size() < kRequiredInfoTypes) {
    lints.push_back({LintCode::kInfoTypesIncomplete,
                     std::to_string(s.author_declared_info_types.size()) +
                         " of 3 information types declared"});
  }
  return lints;
}

struct CategoryFrequency {
  std::map<std::pair<std::string, Platform>, size_t> counts;
  size_t apple_total = 0;
  size_t google_total = 0;

  size_t count(const std::string& category, Platform p) const {
    auto it = counts.find({category, p});
    return it == counts.end() ? 0 : it->second;
  }

  /// Distinct category labels, both stores merged.
  std::set<std::string> categories() const {
    std::set<std::string> out;
    for (const auto& [key, n] : counts) out.insert(key.first);
    return out;
  }
};

inline CategoryFrequency category_frequency(const Corpus& c) {
  CategoryFrequency f;
  for (const auto& s : c.scenarios()) {
    ++f.counts[{s.category, s.platform}];
    (s.platform == Platform::kApple ? f.apple_total : f.google_total)++;
  }
  return f;
}

}  // namespace uccx
