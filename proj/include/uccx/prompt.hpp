// Prompt presets and rendering.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "uccx/components.hpp"
#include "uccx/corpus.hpp"
#include "uccx/json_schema.hpp"

namespace uccx {

struct ComponentDefinition {
  ComponentKind component = ComponentKind::kName;
  std::string definition_text;
  std::vector<std::string> examples;

  bool operator==(const ComponentDefinition&) const = default;
};

struct PromptPreset {
  std::string id;
  std::string preamble;
  std::vector<ComponentDefinition> definitions;  // one per component, fixed order
  std::string response_instruction;

  bool operator==(const PromptPreset&) const = default;
};

class PresetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The seed prompt's surrounding wording is not published verbatim; these
// defaults reconstruct its intent and can be overridden per preset.
inline constexpr const char* kDefaultPreamble =
    "Extract the following use case components from the paragraph below. Answer "
    "using one line per component, prefixed with the component label.";
inline constexpr const char* kDefaultResponseInstruction =
    "Repeat each of the seven component labels listed above as a heading, in the "
    "same order and followed by a colon, then give the extracted values. Write "
    "\"None\" when the paragraph contains no value for a component.";

inline void check_preset(const PromptPreset& p) {
  if (p.definitions.size() != kAllComponents.size()) {
    throw PresetError("preset '" + p.id + "' has " + std::to_string(p.definitions.size()) +
                      " definitions, expected 7");
  }
  for (size_t i = 0; i < kAllComponents.size(); ++i) {
    const auto& d = p.definitions[i];
    if (d.component != kAllComponents[i]) {
      throw PresetError("preset '" + p.id + "': definition " + std::to_string(i) + " is " +
                        std::string(component_key(d.component)) + ", expected " +
                        std::string(component_key(kAllComponents[i])));
    }
    if (d.definition_text.empty()) {
      throw PresetError("preset '" + p.id + "': empty definition for " +
                        std::string(component_key(d.component)));
    }
  }
}

inline std::string render_definition_line(const ComponentDefinition& d) {
  std::string line = std::string(component_label(d.component)) + ": " + d.definition_text;
  if (!d.examples.empty()) {
    line += " For example: ";
    for (size_t i = 0; i < d.examples.size(); ++i) {
      if (i) line += ", ";
      line += "\"" + d.examples[i] + "\"";
    }
    line += ".";
  }
  return line;
}

/// Deterministic; depends only on the preset and the scenario text.
inline std::string render(const PromptPreset& preset, const Scenario& scenario) {
  check_preset(preset);
  if (text::trim(scenario.text).empty()) {
    throw PresetError("cannot render a prompt for blank scenario '" + scenario.id + "'");
  }
  std::string out;
  if (!preset.preamble.empty()) out += preset.preamble + "\n\n";
  for (const auto& d : preset.definitions) out += render_definition_line(d) + "\n";
  if (!preset.response_instruction.empty()) out += "\n" + preset.response_instruction + "\n";
  out += "\nParagraph:\n" + scenario.text + "\n";
  return out;
}

namespace presets {

// Component definitions as used for the manual labeling guideline.
inline std::vector<ComponentDefinition> seed_definitions() {
  return {
      {ComponentKind::kName,
       "A name is a label that describes the purpose of the UC. Usually, VERB, NOUN, or a "
       "combination of VERB and NOUN is sufficient as the UC name, e.g., \"Order.\"",
       {}},
      {ComponentKind::kGoal,
       "Describe the UC's goal, e.g., \"Ordering something successfully from McDonald's.\"",
       {}},
      {ComponentKind::kUser,
       "The primary user is the person using the mobile app and describes the scenario. "
       "Pronouns can be an example of the primary user in the scenario.",
       {}},
      {ComponentKind::kSystem,
       "The primary system involved in the UC. For example, \"McDonald's app\" or "
       "\"McDonald's\" are the primary system in a scenario.",
       {}},
      {ComponentKind::kExternalEntities,
       "Any other actor/system besides the primary user and the system mentioned in the "
       "scenario should be considered an external entity. For example, \"Google Pay\" is an "
       "external entity in the following sentence: \"I use Google Pay to pay for McDonald's "
       "order.\"",
       {}},
      {ComponentKind::kDataPractices,
       "Any data practice entailing the collection, usage, and sharing of information types, "
       "e.g., \"app uses my location\" or \"I provide my address.\"",
       {}},
      {ComponentKind::kSteps,
       "List of actions performed by the actors or the system, e.g., \"view available items\" "
       "or \"click the reorder button.\"",
       {}},
  };
}

inline constexpr const char* kRefinedDataPractices =
    "Data practices are specific kinds of interactions between users, systems, or external "
    "entities. Data practices convey privacy requirements. A privacy requirement consists of "
    "actors with whom the data is shared, actions that are performed on the data, data "
    "elements on which actions are performed, and purposes for which data maybe be acted upon.";

inline constexpr const char* kRefinedSteps =
    "A step is an interaction between the user, system, or external entity that is not a data "
    "practice. A step is an action the user, system, or external entity performs.";

inline std::vector<std::string> data_practice_examples() {
  return {"app uses my location", "app collects my height", "user resets password",
          "user makes purchases on the app", "app uses my name, age, and financial history"};
}

inline std::vector<std::string> step_examples() {
  return {"user opens the Instacart app on their phone", "user check how many lives are left",
          "user taps on the safety section at the bottom of the home screen",
          "user changes sound quality for audio tracks", "user selects a course to continue"};
}

inline PromptPreset seed() {
  return {"seed", kDefaultPreamble, seed_definitions(), kDefaultResponseInstruction};
}

/// Seed with sharper data-practice and step definitions.
inline PromptPreset refined() {
  auto p = seed();
  p.id = "refined";
  p.definitions[5].definition_text = kRefinedDataPractices;
  p.definitions[6].definition_text = kRefinedSteps;
  return p;
}

/// Refined, plus five labeled examples each for data practices and steps.
inline PromptPreset refined_with_examples() {
  auto p = refined();
  p.id = "refined_with_examples";
  p.definitions[5].examples = data_practice_examples();
  p.definitions[6].examples = step_examples();
  return p;
}

}  // namespace presets

inline std::vector<PromptPreset> builtin_presets() {
  return {presets::seed(), presets::refined(), presets::refined_with_examples()};
}

/// Row label used in defect comparison reports.
inline std::string preset_display_name(const std::string& id) {
  if (id == "seed") return "Seed";
  if (id == "refined") return "Prompt#1";
  if (id == "refined_with_examples") return "Prompt#2";
  return id;
}

inline void to_json(json& j, const ComponentDefinition& d) {
  j = json{{"component", component_key(d.component)}, {"definition_text", d.definition_text}};
  if (!d.examples.empty()) j["examples"] = d.examples;
}

inline void from_json(const json& j, ComponentDefinition& d) {
  auto kind = parse_component(j.at("component").get<std::string>());
  if (!kind) throw PresetError("unknown component " + j.at("component").dump());
  d.component = *kind;
  d.definition_text = j.at("definition_text").get<std::string>();
  d.examples = j.value("examples", std::vector<std::string>{});
}

inline void to_json(json& j, const PromptPreset& p) {
  j = json{{"id", p.id},
           {"preamble", p.preamble},
           {"definitions", p.definitions},
           {"response_instruction", p.response_instruction}};
}

inline void from_json(const json& j, PromptPreset& p) {
  p.id = j.at("id").get<std::string>();
  p.preamble = j.at("preamble").get<std::string>();
  p.definitions = j.at("definitions").get<std::vector<ComponentDefinition>>();
  p.response_instruction = j.at("response_instruction").get<std::string>();
}

inline std::vector<PromptPreset> presets_from_json(const json& doc) {
  static const JsonSchema schema = JsonSchema::bundled("presets");
  auto violations = schema.validate(doc);
  if (!violations.empty()) {
    throw PresetError("preset file " + violations.front().pointer + ": " +
                      violations.front().message);
  }
  auto out = doc.get<std::vector<PromptPreset>>();
  for (const auto& p : out) check_preset(p);
  return out;
}

inline std::vector<PromptPreset> load_presets(const fs::path& path) {
  return presets_from_json(io::read_json(path));
}

/// Builtins, overridden or extended by the presets in `extra_file` when given.
inline std::vector<PromptPreset> available_presets(const fs::path& extra_file = {}) {
  auto all = builtin_presets();
  if (extra_file.empty()) return all;
  for (auto& p : load_presets(extra_file)) {
    bool replaced = false;
    for (auto& q : all) {
      if (q.id == p.id) {
        q = p;
        replaced = true;
      }
    }
    if (!replaced) all.push_back(std::move(p));
  }
  return all;
}

inline const PromptPreset& find_preset(const std::vector<PromptPreset>& all,
                                       const std::string& id) {
  for (const auto& p : all) {
    if (p.id == id) return p;
  }
  throw PresetError("unknown preset '" + id + "'");
}

}  // namespace uccx
