// Random inputs shared by the property tests and the acceptance binary.

#pragma once

#include "test_util.hpp"
#include "uccx/annotation.hpp"
#include "uccx/parser.hpp"

namespace uccx::testkit {

// ---------------------------------------------------------------------------
// Components

inline const std::vector<std::string>& component_vocab() {
  static const std::vector<std::string> v = {
      "open", "the", "Instacart", "app", "view", "past", "orders", "I've", "café", "5€", "Google Pay",
      "re-add", "-", "*", "•", "1.", "2)", "\"", "'", "“quoted”", "`", ":", "Data Action:", "data element:",
      "UC-Goal", "UC-Name:", "#", "**", "__", ",", "None", "N/A", "Not", "Mentioned", "(", ")", "e.g.,", "x/y",
      "100%", "3.5", "Your Lists", "?", "!", "&",
  };
  return v;
}

/// Trimmed, single-line, non-empty and not itself a null sentinel.
inline bool valid_element(const std::string& e) {
  return !e.empty() && text::trim(e) == e && e.find('\n') == std::string::npos && !is_null_sentinel(e);
}

inline std::string random_element(Gen& g) {
  for (;;) {
    std::string e;
    size_t words = 1 + g.below(6);
    for (size_t w = 0; w < words; ++w) {
      if (w) e += g.chance(0.1) ? "" : " ";
      e += g.pick(component_vocab());
    }
    e = text::squeeze_spaces(e);
    if (valid_element(e)) return e;
  }
}

/// About a quarter of the slots are left empty.
inline UCComponents random_components(Gen& g) {
  UCComponents c;
  for (auto k : kAllComponents) {
    if (g.chance(0.25)) continue;
    size_t n = 1 + g.below(5);
    for (size_t i = 0; i < n; ++i) c[k].push_back(random_element(g));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Annotations

inline Scenario make_scenario(const std::string& id, const std::string& body) {
  Scenario s;
  s.id = id;
  s.app_name = "App";
  s.text = body;
  return s;
}

/// Span covering whitespace tokens [first, last] of the scenario text.
inline Span token_span(const Scenario& s, ComponentKind kind, size_t first, size_t last) {
  auto toks = text::whitespace_tokens(s.text);
  Span sp{toks[first].begin, toks[last].end, kind, ""};
  sp.text = text::substr(s.text, sp.start, sp.end);
  return sp;
}

struct AnnotationFixture {
  Scenario scenario;
  std::vector<AnnotationSet> sets;
};

/// One scenario of 2..21 tokens, 2..5 raters each marking random
/// non-overlapping token runs for `kind`.
inline AnnotationFixture random_annotation_fixture(Gen& g, ComponentKind kind) {
  static const std::vector<std::string> words = {"open", "the", "app", "tap", "orders", "I", "view",
                                                 "receipts", "café", "settings", "share", "location"};
  size_t tokens = 2 + g.below(20);
  std::string body;
  for (size_t i = 0; i < tokens; ++i) body += (i ? (g.chance(0.2) ? "  " : " ") : "") + g.pick(words);
  AnnotationFixture f{make_scenario("s", body), {}};
  size_t raters = 2 + g.below(4);
  for (size_t r = 0; r < raters; ++r) {
    AnnotationSet a{"s", "r" + std::to_string(r), {}};
    size_t t = 0;
    while (t < tokens) {
      if (g.chance(0.4)) {
        size_t last = std::min(tokens - 1, t + g.below(3));
        a.spans.push_back(token_span(f.scenario, kind, t, last));
        t = last + 2;  // gap keeps spans apart
      } else {
        ++t;
      }
    }
    f.sets.push_back(std::move(a));
  }
  return f;
}

inline double fixture_kappa(const AnnotationFixture& f, ComponentKind kind) {
  std::vector<Scenario> scenarios{f.scenario};
  return fleiss_kappa(scenarios, f.sets, kind);
}

}  // namespace uccx::testkit
