// Multi-annotator span labels over scenarios.
//
// Agreement and adjudication both work on whitespace tokens of the scenario
// text: a token counts as labeled with a component by an annotator when any of
// that annotator's spans for the component overlaps it.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uccx/components.hpp"
#include "uccx/corpus.hpp"
#include "uccx/json_schema.hpp"
#include "uccx/text.hpp"

namespace uccx {

struct Span {
  size_t start = 0;
  size_t end = 0;
  ComponentKind component = ComponentKind::kName;
  std::string text;

  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }
  bool operator==(const Span&) const = default;
};

struct AnnotationSet {
  std::string scenario_id;
  std::string annotator_id;
  std::vector<Span> spans;

  bool operator==(const AnnotationSet&) const = default;
};

enum class GroundTruthSource { kAdjudicated, kSingleAnnotator };

struct GroundTruth {
  std::string scenario_id;
  UCComponents components;
  GroundTruthSource source = GroundTruthSource::kAdjudicated;
};

inline void to_json(json& j, const Span& s) {
  j = json{{"start", s.start},
           {"end", s.end},
           {"component", component_key(s.component)},
           {"text", s.text}};
}

inline void from_json(const json& j, Span& s) {
  s.start = j.at("start").get<size_t>();
  s.end = j.at("end").get<size_t>();
  auto kind = parse_component(j.at("component").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown component " + j.at("component").dump());
  s.component = *kind;
  s.text = j.at("text").get<std::string>();
}

inline void to_json(json& j, const AnnotationSet& a) {
  j = json{{"scenario_id", a.scenario_id}, {"annotator_id", a.annotator_id}, {"spans", a.spans}};
}

inline void from_json(const json& j, AnnotationSet& a) {
  a.scenario_id = j.at("scenario_id").get<std::string>();
  a.annotator_id = j.at("annotator_id").get<std::string>();
  a.spans = j.at("spans").get<std::vector<Span>>();
}

class AnnotationError : public std::runtime_error {
 public:
  AnnotationError(const std::string& what, std::vector<std::string> problems = {})
      : std::runtime_error(what), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Every way the set violates the span invariants for this scenario; empty if valid.
inline std::vector<std::string> annotation_problems(const Scenario& scenario,
                                                    const AnnotationSet& a) {
  std::vector<std::string> problems;
  if (a.scenario_id != scenario.id) {
    problems.push_back("annotation set is for '" + a.scenario_id + "', not '" + scenario.id + "'");
  }
  auto cps = text::decode_utf8(scenario.text);
  for (size_t i = 0; i < a.spans.size(); ++i) {
    const auto& s = a.spans[i];
    std::string where = "span " + std::to_string(i);
    if (s.start >= s.end || s.end > cps.size()) {
      problems.push_back(where + ": offsets [" + std::to_string(s.start) + ", " +
                         std::to_string(s.end) + ") invalid for text of length " +
                         std::to_string(cps.size()));
      continue;
    }
    auto actual = text::encode_utf8(std::u32string_view(cps).substr(s.start, s.end - s.start));
    if (actual != s.text) {
      problems.push_back(where + ": text \"" + s.text + "\" does not match scenario text \"" +
                         actual + "\"");
    }
    for (size_t j = 0; j < i; ++j) {
      const auto& o = a.spans[j];
      if (o.component == s.component && o.overlaps(s)) {
        problems.push_back(where + ": overlaps span " + std::to_string(j) + " of the same component " +
                           std::string(component_key(s.component)));
      }
    }
  }
  return problems;
}

inline void validate_annotation(const Scenario& scenario, const AnnotationSet& a) {
  auto problems = annotation_problems(scenario, a);
  if (!problems.empty()) {
    auto what = "invalid annotation set " + a.scenario_id + "/" + a.annotator_id + ": " + problems.front();
    throw AnnotationError(what, std::move(problems));
  }
}

/// One element per span, in document order. Interior whitespace runs
/// (including line breaks) collapse to single spaces.
inline UCComponents spans_to_components(const Scenario& scenario, const AnnotationSet& a) {
  validate_annotation(scenario, a);
  std::vector<const Span*> ordered;
  for (const auto& s : a.spans) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Span* x, const Span* y) {
    return x->start != y->start ? x->start < y->start : x->end < y->end;
  });
  UCComponents out;
  for (const Span* s : ordered) out[s->component].push_back(text::squeeze_spaces(s->text));
  return out;
}

struct AnnotationLint {
  std::string code;
  std::string detail;
};

/// H9: goal spans must not overlap step or data-practice spans of the same
/// annotator. Name-inside-goal overlap (H5) is expected and not reported.
inline std::vector<AnnotationLint> lint_annotation(const AnnotationSet& a) {
  std::vector<AnnotationLint> out;
  for (const auto& g : a.spans) {
    if (g.component != ComponentKind::kGoal) continue;
    for (const auto& o : a.spans) {
      if ((o.component == ComponentKind::kSteps ||
           o.component == ComponentKind::kDataPractices) &&
          g.overlaps(o)) {
        out.push_back({"H9_GOAL_OVERLAPS_INTERACTION",
                       "goal \"" + g.text + "\" overlaps " +
                           std::string(component_key(o.component)) + " \"" + o.text + "\""});
      }
    }
  }
  return out;
}

inline std::vector<AnnotationSet> annotations_from_json(const json& doc) {
  static const JsonSchema schema = JsonSchema::bundled("annotations");
  auto violations = schema.validate(doc);
  if (!violations.empty()) {
    throw AnnotationError("annotation file " + violations.front().pointer + ": " +
                          violations.front().message);
  }
  return doc.get<std::vector<AnnotationSet>>();
}

inline std::vector<AnnotationSet> load_annotations(const fs::path& path) {
  return annotations_from_json(io::read_json(path));
}

inline void save_annotations(const std::vector<AnnotationSet>& sets, const fs::path& path) {
  io::write_json_atomic(path, json(sets));
}

// ---------------------------------------------------------------------------
// Agreement

/// Fleiss' kappa over a ratings table: counts[i][j] is the number of raters
/// assigning item i to category j. Every row must sum to the same n >= 2.
/// When chance agreement is total (every rating in one category) the raters
/// cannot disagree and the result is 1.
inline double fleiss_kappa(std::span<const std::vector<int>> counts) {
  if (counts.empty()) throw AnnotationError("fleiss kappa: no items");
  const size_t k = counts.front().size();
  int n = 0;
  for (int c : counts.front()) n += c;
  if (n < 2) throw AnnotationError("fleiss kappa: need at least 2 raters per item");

  std::vector<double> category_totals(k, 0.0);
  double p_bar = 0.0;
  for (const auto& row : counts) {
    if (row.size() != k) throw AnnotationError("fleiss kappa: ragged category rows");
    int row_n = 0;
    double sq = 0.0;
    for (size_t j = 0; j < k; ++j) {
      row_n += row[j];
      sq += static_cast<double>(row[j]) * row[j];
      category_totals[j] += row[j];
    }
    if (row_n != n) throw AnnotationError("fleiss kappa: items rated by different rater counts");
    p_bar += (sq - n) / (static_cast<double>(n) * (n - 1));
  }
  const double items = static_cast<double>(counts.size());
  p_bar /= items;
  double p_e = 0.0;
  for (double t : category_totals) {
    double p = t / (items * n);
    p_e += p * p;
  }
  if (1.0 - p_e < 1e-12) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

namespace detail {

inline std::map<std::string, std::vector<const AnnotationSet*>> group_by_scenario(
    std::span<const AnnotationSet> annotations) {
  std::map<std::string, std::vector<const AnnotationSet*>> out;
  for (const auto& a : annotations) out[a.scenario_id].push_back(&a);
  return out;
}

inline bool covers(const AnnotationSet& a, ComponentKind kind, const text::Token& t) {
  for (const auto& s : a.spans) {
    if (s.component == kind && s.start < t.end && t.begin < s.end) return true;
  }
  return false;
}

}  // namespace detail

/// Token-level binary (IN/OUT) Fleiss' kappa for one component, pooled over
/// all tokens of all listed scenarios.
inline double fleiss_kappa(std::span<const Scenario> scenarios,
                           std::span<const AnnotationSet> annotations, ComponentKind component) {
  auto grouped = detail::group_by_scenario(annotations);
  std::vector<std::vector<int>> counts;
  size_t raters = 0;
  for (const auto& scenario : scenarios) {
    auto it = grouped.find(scenario.id);
    size_t n = it == grouped.end() ? 0 : it->second.size();
    if (n < 2) {
      throw AnnotationError("fleiss kappa: scenario '" + scenario.id + "' has " +
                            std::to_string(n) + " annotators, need at least 2");
    }
    if (raters == 0) raters = n;
    if (n != raters) {
      throw AnnotationError("fleiss kappa: scenario '" + scenario.id + "' has " +
                            std::to_string(n) + " annotators, expected " + std::to_string(raters));
    }
    for (const auto* a : it->second) validate_annotation(scenario, *a);
    for (const auto& token : text::whitespace_tokens(scenario.text)) {
      int in = 0;
      for (const auto* a : it->second) in += detail::covers(*a, component, token);
      counts.push_back({in, static_cast<int>(n) - in});
    }
  }
  if (counts.empty()) throw AnnotationError("fleiss kappa: zero tokens");
  return fleiss_kappa(std::span<const std::vector<int>>(counts));
}

// ---------------------------------------------------------------------------
// Adjudication

/// Majority-vote merge of several annotators' spans into one annotation set.
///
/// A token is kept for a component when a strict majority of annotators cover
/// it. Consecutive kept tokens stay in one span only when a strict majority
/// cover both with the same span. Each merged span is then tightened to the
/// characters a strict majority cover, so unanimous input reproduces the input
/// offsets exactly.
inline AnnotationSet adjudicate_spans(const Scenario& scenario,
                                      std::span<const AnnotationSet> annotations,
                                      std::string annotator_id = "adjudicated") {
  if (annotations.size() < 2) {
    throw AnnotationError("adjudicate: need at least 2 annotation sets for '" + scenario.id + "'");
  }
  for (const auto& a : annotations) validate_annotation(scenario, a);
  const size_t n = annotations.size();
  auto majority = [n](size_t votes) { return 2 * votes > n; };

  auto cps = text::decode_utf8(scenario.text);
  auto tokens = text::whitespace_tokens(std::u32string_view(cps));

  AnnotationSet merged{scenario.id, std::move(annotator_id), {}};
  for (auto kind : kAllComponents) {
    // owner[a][t]: index of annotator a's span covering token t, or -1.
    std::vector<std::vector<int>> owner(n, std::vector<int>(tokens.size(), -1));
    for (size_t a = 0; a < n; ++a) {
      const auto& spans = annotations[a].spans;
      for (size_t t = 0; t < tokens.size(); ++t) {
        for (size_t s = 0; s < spans.size(); ++s) {
          if (spans[s].component == kind && spans[s].start < tokens[t].end &&
              tokens[t].begin < spans[s].end) {
            owner[a][t] = static_cast<int>(s);
            break;
          }
        }
      }
    }
    auto kept = [&](size_t t) {
      size_t votes = 0;
      for (size_t a = 0; a < n; ++a) votes += owner[a][t] >= 0;
      return majority(votes);
    };
    auto joined = [&](size_t t) {
      size_t votes = 0;
      for (size_t a = 0; a < n; ++a) votes += owner[a][t] >= 0 && owner[a][t] == owner[a][t + 1];
      return majority(votes);
    };

    size_t t = 0;
    while (t < tokens.size()) {
      if (!kept(t)) {
        ++t;
        continue;
      }
      size_t last = t;
      while (last + 1 < tokens.size() && kept(last + 1) && joined(last)) ++last;

      size_t lo = tokens[t].begin;
      size_t hi = tokens[last].end;
      size_t b = hi;
      size_t e = lo;
      for (size_t c = lo; c < hi; ++c) {
        size_t votes = 0;
        for (const auto& a : annotations) {
          for (const auto& s : a.spans) {
            if (s.component == kind && s.start <= c && c < s.end) {
              ++votes;
              break;
            }
          }
        }
        if (majority(votes)) {
          b = std::min(b, c);
          e = std::max(e, c + 1);
        }
      }
      if (b >= e) {
        b = lo;
        e = hi;
      }
      merged.spans.push_back(
          {b, e, kind, text::encode_utf8(std::u32string_view(cps).substr(b, e - b))});
      t = last + 1;
    }
  }
  std::stable_sort(merged.spans.begin(), merged.spans.end(),
                   [](const Span& x, const Span& y) { return x.start < y.start; });
  return merged;
}

inline GroundTruth adjudicate(const Scenario& scenario,
                              std::span<const AnnotationSet> annotations) {
  auto merged = adjudicate_spans(scenario, annotations);
  return {scenario.id, spans_to_components(scenario, merged), GroundTruthSource::kAdjudicated};
}

}  // namespace uccx
