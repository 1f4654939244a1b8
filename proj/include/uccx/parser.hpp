// Turns free-text chat responses into UCComponents.
//
// The parser is total: any input produces a report. Layout variance seen in
// practice (bullets vs comma lists, null sentinels such as "None Mentioned",
// data practices spelled out as key/value dictionaries) is normalized and
// reported as warnings rather than errors.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uccx/components.hpp"
#include "uccx/text.hpp"

namespace uccx {

enum class WarningKind {
  kMissingHeading,
  kNullSentinelNormalized,
  kDictFormatFlattened,
  kUnparsedTrailingText,
};

inline std::string_view warning_name(WarningKind k) {
  switch (k) {
    case WarningKind::kMissingHeading: return "MISSING_HEADING";
    case WarningKind::kNullSentinelNormalized: return "NULL_SENTINEL_NORMALIZED";
    case WarningKind::kDictFormatFlattened: return "DICT_FORMAT_FLATTENED";
    case WarningKind::kUnparsedTrailingText: return "UNPARSED_TRAILING_TEXT";
  }
  return "";
}

inline std::optional<WarningKind> parse_warning_kind(std::string_view s) {
  for (auto k : {WarningKind::kMissingHeading, WarningKind::kNullSentinelNormalized,
                 WarningKind::kDictFormatFlattened, WarningKind::kUnparsedTrailingText}) {
    if (warning_name(k) == s) return k;
  }
  return std::nullopt;
}

struct ParseWarning {
  WarningKind kind;
  std::string detail;
  bool operator==(const ParseWarning&) const = default;
};

struct ParseReport {
  UCComponents components;
  std::vector<ParseWarning> warnings;

  bool has(WarningKind k) const {
    for (const auto& w : warnings) {
      if (w.kind == k) return true;
    }
    return false;
  }
};

inline void to_json(json& j, const ParseWarning& w) {
  j = json{{"kind", warning_name(w.kind)}, {"detail", w.detail}};
}

inline void from_json(const json& j, ParseWarning& w) {
  auto k = parse_warning_kind(j.at("kind").get<std::string>());
  if (!k) throw std::invalid_argument("unknown warning kind " + j.at("kind").dump());
  w.kind = *k;
  w.detail = j.value("detail", "");
}

namespace parse_detail {

/// Lowercased, punctuation removed, whitespace squeezed.
inline std::string sentinel_key(std::string_view s) {
  std::string out;
  for (char32_t c : text::decode_utf8(text::to_lower(s))) {
    if (!text::is_punct(c)) text::append_utf8(out, c);
  }
  return text::squeeze_spaces(out);
}

/// Content after a list marker ("-", "*", "•", "3.", "3)"), or nullopt when
/// the line is not a list item. The marker must be followed by whitespace or
/// end the line.
inline std::optional<std::string> strip_bullet(std::string_view line) {
  auto cps = text::decode_utf8(line);
  size_t i = 0;
  while (i < cps.size() && text::is_space(cps[i])) ++i;
  size_t after = 0;
  if (i < cps.size() && (cps[i] == '-' || cps[i] == '*' || cps[i] == 0x2022)) {
    after = i + 1;
  } else {
    size_t d = i;
    while (d < cps.size() && cps[d] >= '0' && cps[d] <= '9') ++d;
    if (d == i || d >= cps.size() || (cps[d] != '.' && cps[d] != ')')) return std::nullopt;
    after = d + 1;
  }
  if (after < cps.size() && !text::is_space(cps[after])) return std::nullopt;
  return text::trim(text::encode_utf8(std::u32string_view(cps).substr(after)));
}

inline bool is_quote(char32_t c) {
  return c == '"' || c == '\'' || c == 0x201C || c == 0x201D || c == 0x2018 || c == 0x2019 ||
         c == '`';
}

/// Removes one layer of matching surrounding quotes.
inline std::string strip_quotes(std::string_view s) {
  auto cps = text::decode_utf8(s);
  if (cps.size() >= 2) {
    char32_t a = cps.front();
    char32_t b = cps.back();
    bool pair = (a == '"' && b == '"') || (a == '\'' && b == '\'') ||
                (a == 0x201C && b == 0x201D) || (a == 0x2018 && b == 0x2019) ||
                (a == '`' && b == '`');
    if (pair) return text::encode_utf8(std::u32string_view(cps).substr(1, cps.size() - 2));
  }
  return std::string(s);
}

inline std::string clean_element(std::string_view s) {
  return text::trim(strip_quotes(text::trim(s)));
}

/// Comma split that leaves commas inside double quotes alone.
inline std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char32_t c : text::decode_utf8(s)) {
    if (c == '"' || c == 0x201C || c == 0x201D) quoted = !quoted;
    if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      text::append_utf8(cur, c);
    }
  }
  out.push_back(cur);
  return out;
}

inline constexpr std::array<std::string_view, 4> kDictKeys = {
    "data sharing", "data action", "data element", "data purpose"};

/// Index into kDictKeys for a "Key: value" line, plus the value.
inline std::optional<std::pair<size_t, std::string>> dict_entry(std::string_view line) {
  std::string body = text::trim(line);
  if (auto b = strip_bullet(body)) body = *b;
  auto colon = body.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string key = text::to_lower(text::trim(body.substr(0, colon)));
  std::erase(key, '*');
  key = text::trim(key);
  if (!key.empty() && key.back() == 's') key.pop_back();
  for (size_t i = 0; i < kDictKeys.size(); ++i) {
    if (key == kDictKeys[i]) {
      std::string value = body.substr(colon + 1);
      std::erase(value, '*');
      return std::pair{i, clean_element(value)};
    }
  }
  return std::nullopt;
}

struct Heading {
  std::optional<ComponentKind> kind;  // nullopt for unknown "UC-Whatever"
  std::string label;
  std::string rest;  // content on the heading line after the label
};

/// Recognizes "UC-<Label>" at the start of a line (after optional markdown
/// "#" or "**"), case-insensitive, optionally followed by ":".
inline std::optional<Heading> match_heading(std::string_view line) {
  std::string s = text::trim(line);
  std::string_view v = s;
  while (!v.empty() && v.front() == '#') v.remove_prefix(1);
  while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
  if (v.starts_with("**") || v.starts_with("__")) v.remove_prefix(2);
  if (!text::starts_with_ci(v, "uc-")) return std::nullopt;
  v.remove_prefix(3);
  std::string ident;
  size_t i = 0;
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  while (i < v.size() && is_alpha(v[i])) ident += v[i++];
  if (ident.empty()) return std::nullopt;
  std::string lower = text::to_lower(ident);
  // Two-word spellings: "UC-External Entities", "UC-Data Practices".
  if ((lower == "external" || lower == "data") && i < v.size() && v[i] == ' ') {
    size_t j = i + 1;
    std::string second;
    while (j < v.size() && is_alpha(v[j])) second += v[j++];
    std::string sl = text::to_lower(second);
    if (sl.starts_with("entit") || sl.starts_with("practice")) {
      ident += " " + second;
      lower += sl;
      i = j;
    }
  }
  if (i < v.size() && (v[i] == '-' || v[i] == '_' || (v[i] >= '0' && v[i] <= '9'))) {
    return std::nullopt;
  }
  Heading h;
  h.label = "UC-" + ident;
  if (lower == "name") h.kind = ComponentKind::kName;
  else if (lower == "goal" || lower == "goals") h.kind = ComponentKind::kGoal;
  else if (lower == "user" || lower == "users") h.kind = ComponentKind::kUser;
  else if (lower == "system") h.kind = ComponentKind::kSystem;
  else if (lower == "et" || lower == "ets" || lower == "externalentities" ||
           lower == "externalentity")
    h.kind = ComponentKind::kExternalEntities;
  else if (lower == "dps" || lower == "dp" || lower == "datapractices" ||
           lower == "datapractice")
    h.kind = ComponentKind::kDataPractices;
  else if (lower == "steps" || lower == "step") h.kind = ComponentKind::kSteps;

  std::string_view rest = v.substr(i);
  if (rest.starts_with("**") || rest.starts_with("__")) rest.remove_prefix(2);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
  if (rest.starts_with("**") || rest.starts_with("__")) rest.remove_prefix(2);
  h.rest = text::trim(rest);
  return h;
}

}  // namespace parse_detail

inline bool is_null_sentinel(std::string_view element) {
  static const std::array<std::string, 6> kSentinels = {
      "none", "not mentioned", "none mentioned", "na", "not applicable", "not specified"};
  auto key = parse_detail::sentinel_key(element);
  for (const auto& s : kSentinels) {
    if (key == s) return true;
  }
  return false;
}

/// Drops null-sentinel elements ("None", "N/A", "Not Mentioned", ...).
inline std::vector<std::string> normalize_empty(const std::vector<std::string>& elements) {
  std::vector<std::string> out;
  for (const auto& e : elements) {
    if (!is_null_sentinel(e)) out.push_back(e);
  }
  return out;
}

/// Rebuilds data practices reported as "Data Sharing/Action/Element/Purpose:"
/// key-value groups into one element per group, values joined by single
/// spaces in sharing, action, element, purpose order. A repeated key or a
/// bare label line ("Data Practice 2:") starts a new group, as does a bullet
/// when groups continue on indented unbulleted lines. Input that is not
/// entirely in that shape comes back unchanged.
inline std::vector<std::string> flatten_dict_format(const std::vector<std::string>& region_lines,
                                                    std::vector<ParseWarning>* warnings = nullptr) {
  using parse_detail::dict_entry;
  std::vector<std::string> out;
  std::array<std::optional<std::string>, 4> group;
  bool any = false;
  auto flush = [&] {
    std::vector<std::string> parts;
    for (auto& v : group) {
      if (v && !v->empty()) parts.push_back(*v);
      v.reset();
    }
    if (!parts.empty()) out.push_back(text::join(parts, " "));
  };
  auto bulleted = [](const std::string& line) { return parse_detail::strip_bullet(line).has_value(); };
  bool nested = std::any_of(region_lines.begin(), region_lines.end(), [&](const std::string& raw) {
    std::string line = text::trim(raw);
    return !raw.empty() && (raw[0] == ' ' || raw[0] == '\t') && !bulleted(line) && dict_entry(line);
  });
  for (const auto& raw : region_lines) {
    std::string line = text::trim(raw);
    if (line.empty()) continue;
    if (auto entry = dict_entry(line)) {
      any = true;
      auto& slot = group[entry->first];
      if (slot || (nested && bulleted(line))) flush();
      group[entry->first] = entry->second;
      continue;
    }
    // Group label such as "Data Practice 1:" or "1." separates groups.
    std::string body = line;
    if (auto b = parse_detail::strip_bullet(body)) body = *b;
    if (body.empty() || body.back() == ':') {
      flush();
      continue;
    }
    return region_lines;
  }
  if (!any) return region_lines;
  flush();
  if (warnings) {
    warnings->push_back({WarningKind::kDictFormatFlattened,
                         std::to_string(out.size()) +
                             " data practice(s) rebuilt from key/value lines (sharing, action, "
                             "element, purpose order)"});
  }
  return out;
}

namespace parse_detail {

inline std::vector<std::string> parse_region(ComponentKind kind,
                                             const std::vector<std::string>& lines,
                                             std::vector<ParseWarning>& warnings) {
  std::vector<std::string> nonblank;
  for (const auto& l : lines) {
    if (!text::trim(l).empty()) nonblank.push_back(l);
  }
  if (nonblank.empty()) return {};

  if (kind == ComponentKind::kDataPractices) {
    std::vector<ParseWarning> local;
    auto flat = flatten_dict_format(nonblank, &local);
    if (!local.empty()) {
      warnings.insert(warnings.end(), local.begin(), local.end());
      return flat;
    }
  }

  // Prose after a blank line that follows the last list item is not part of
  // the component.
  size_t last_bullet = lines.size();
  for (size_t i = 0; i < lines.size(); ++i) {
    if (strip_bullet(lines[i])) last_bullet = i;
  }
  std::vector<std::string> elements;
  bool gap_after_list = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = text::trim(lines[i]);
    if (line.empty()) {
      if (last_bullet < lines.size() && i > last_bullet) gap_after_list = true;
      continue;
    }
    if (auto item = strip_bullet(line)) {
      elements.push_back(*item);
      continue;
    }
    if (gap_after_list) {
      warnings.push_back({WarningKind::kUnparsedTrailingText,
                          std::string(component_label(kind)) + ": ignored \"" + line + "\""});
      continue;
    }
    // Lead-in such as "Steps taken:" above a list.
    if (last_bullet < lines.size() && i < last_bullet && line.back() == ':') continue;
    if (is_short_component(kind)) {
      for (auto& part : split_commas(line)) elements.push_back(part);
    } else {
      elements.push_back(line);
    }
  }
  std::vector<std::string> cleaned;
  for (const auto& e : elements) {
    auto c = clean_element(e);
    if (!c.empty()) cleaned.push_back(std::move(c));
  }
  return cleaned;
}

}  // namespace parse_detail

inline ParseReport parse_response(std::string_view response) {
  using namespace parse_detail;
  ParseReport report;
  std::array<bool, 7> seen{};

  struct Region {
    std::optional<Heading> heading;
    std::vector<std::string> lines;
  };
  std::vector<Region> regions;
  for (const auto& line : text::split_lines(response)) {
    if (auto h = match_heading(line)) {
      regions.push_back({std::move(h), {}});
      regions.back().lines.push_back(regions.back().heading->rest);
    } else if (!regions.empty()) {
      regions.back().lines.push_back(line);
    }
    // Text before the first heading is conversational framing; dropped.
  }

  for (const auto& r : regions) {
    if (!r.heading->kind) {
      report.warnings.push_back(
          {WarningKind::kUnparsedTrailingText, "unknown heading " + r.heading->label + " ignored"});
      continue;
    }
    auto kind = *r.heading->kind;
    seen[static_cast<size_t>(kind)] = true;
    auto elements = parse_region(kind, r.lines, report.warnings);
    auto kept = normalize_empty(elements);
    if (kept.size() != elements.size()) {
      report.warnings.push_back({WarningKind::kNullSentinelNormalized,
                                 std::string(component_label(kind)) + ": " +
                                     std::to_string(elements.size() - kept.size()) +
                                     " null sentinel(s) removed"});
    }
    auto& slot = report.components[kind];
    slot.insert(slot.end(), kept.begin(), kept.end());
  }

  for (auto kind : kAllComponents) {
    if (!seen[static_cast<size_t>(kind)]) {
      report.warnings.push_back(
          {WarningKind::kMissingHeading, std::string(component_label(kind)) + " not found"});
    }
  }
  return report;
}

}  // namespace uccx
