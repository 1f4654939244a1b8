#include <gtest/gtest.h>

#include "test_util.hpp"
#include "uccx/prompt.hpp"

using namespace uccx;

namespace {

// Typed out independently of the preset source.
const char* kDpsRefined =
    "Data practices are specific kinds of interactions between users, systems, or external entities. "
    "Data practices convey privacy requirements. A privacy requirement consists of actors with whom "
    "the data is shared, actions that are performed on the data, data elements on which actions are "
    "performed, and purposes for which data maybe be acted upon.";
const char* kStepsRefined =
    "A step is an interaction between the user, system, or external entity that is not a data "
    "practice. A step is an action the user, system, or external entity performs.";
const std::vector<std::string> kExamples = {
    "app uses my location",
    "app collects my height",
    "user resets password",
    "user makes purchases on the app",
    "app uses my name, age, and financial history",
    "user opens the Instacart app on their phone",
    "user check how many lives are left",
    "user taps on the safety section at the bottom of the home screen",
    "user changes sound quality for audio tracks",
    "user selects a course to continue",
};

Scenario scenario() {
  Scenario s;
  s.id = "p";
  s.text = "I open the app and look at my orders.";
  return s;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST(Prompt, ThreeBuiltinsInOrder) {
  auto all = builtin_presets();
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].id, "seed");
  EXPECT_EQ(all[1].id, "refined");
  EXPECT_EQ(all[2].id, "refined_with_examples");
  for (const auto& p : all) EXPECT_NO_THROW(check_preset(p));
}

TEST(Prompt, SeedUsesTableDefinitions) {
  auto out = render(presets::seed(), scenario());
  EXPECT_TRUE(contains(out, "UC-Name: A name is a label that describes the purpose of the UC. Usually, VERB, NOUN, "
                            "or a combination of VERB and NOUN is sufficient as the UC name, e.g., \"Order.\""));
  EXPECT_TRUE(contains(out, "UC-System: The primary system involved in the UC. For example, \"McDonald's app\" or "
                            "\"McDonald's\" are the primary system in a scenario."));
  EXPECT_FALSE(contains(out, kDpsRefined));
  EXPECT_FALSE(contains(out, "app collects my height"));
}

TEST(Prompt, RefinedCarriesRefinedDefinitionsOnly) {
  auto out = render(presets::refined(), scenario());
  EXPECT_TRUE(contains(out, std::string("UC-DPs: ") + kDpsRefined));
  EXPECT_TRUE(contains(out, std::string("UC-Steps: ") + kStepsRefined));
  EXPECT_TRUE(contains(out, "actors with whom the data is shared"));
  for (const auto& e : kExamples) EXPECT_FALSE(contains(out, e)) << e;
}

TEST(Prompt, RefinedWithExamplesCarriesAllTen) {
  auto out = render(presets::refined_with_examples(), scenario());
  EXPECT_TRUE(contains(out, kDpsRefined));
  EXPECT_TRUE(contains(out, kStepsRefined));
  for (const auto& e : kExamples) EXPECT_TRUE(contains(out, "\"" + e + "\"")) << e;
}

TEST(Prompt, RenderIsDeterministicAndEndsWithScenario) {
  auto s = scenario();
  for (const auto& p : builtin_presets()) {
    auto a = render(p, s);
    EXPECT_EQ(a, render(p, s));
    EXPECT_TRUE(a.ends_with(s.text + "\n"));
    size_t pos = 0;
    for (auto k : kAllComponents) {
      auto at = a.find(std::string(component_label(k)) + ":", pos);
      ASSERT_NE(at, std::string::npos) << component_label(k);
      pos = at;
    }
  }
}

TEST(Prompt, BlankScenarioRejected) {
  auto s = scenario();
  s.text = "  \n";
  EXPECT_THROW(render(presets::seed(), s), PresetError);
}

TEST(Prompt, MisorderedDefinitionsRejected) {
  auto p = presets::seed();
  std::swap(p.definitions[0], p.definitions[1]);
  EXPECT_THROW(check_preset(p), PresetError);
  p = presets::seed();
  p.definitions.pop_back();
  EXPECT_THROW(check_preset(p), PresetError);
}

TEST(Prompt, PresetFileOverridesAndExtends) {
  testkit::TempDir dir;
  auto custom = presets::refined();
  custom.id = "terse";
  custom.preamble = "Extract.";
  auto seed = presets::seed();
  seed.response_instruction = "Answer briefly.";
  io::write_json_atomic(dir / "presets.json", json::array({json(custom), json(seed)}));
  auto all = available_presets(dir / "presets.json");
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(find_preset(all, "seed").response_instruction, "Answer briefly.");
  EXPECT_EQ(find_preset(all, "terse").preamble, "Extract.");
  EXPECT_THROW(find_preset(all, "missing"), PresetError);
}

TEST(Prompt, PresetJsonRoundTrip) {
  for (const auto& p : builtin_presets()) {
    EXPECT_EQ(json(p).get<PromptPreset>(), p);
  }
  EXPECT_THROW(presets_from_json(json::array({{{"id", "x"}}})), PresetError);
}

TEST(Prompt, DisplayNames) {
  EXPECT_EQ(preset_display_name("seed"), "Seed");
  EXPECT_EQ(preset_display_name("refined"), "Prompt#1");
  EXPECT_EQ(preset_display_name("refined_with_examples"), "Prompt#2");
  EXPECT_EQ(preset_display_name("terse"), "terse");
}
