#include <gtest/gtest.h>

#include "test_util.hpp"
#include "uccx/corpus.hpp"

using namespace uccx;

namespace {

json scenario_json(const std::string& id, size_t words) {
  std::string body;
  for (size_t i = 0; i < words; ++i) body += (i ? " " : "") + std::string("word");
  return json{{"id", id},
              {"app_name", "App"},
              {"store_url", "https://example.org/app"},
              {"platform", "apple"},
              {"category", "Tools"},
              {"screen_title", "Home"},
              {"text", body},
              {"author_declared_info_types", {"location", "contacts", "payment"}}};
}

}  // namespace

TEST(Corpus, SampleLoadsWithoutLints) {
  auto c = load_corpus(testkit::sample("corpus.json"));
  EXPECT_EQ(c.size(), 16u);
  for (const auto& s : c.scenarios()) EXPECT_TRUE(validate_scenario(s).empty()) << s.id;
  EXPECT_TRUE(c.contains("food-instacart"));
  EXPECT_EQ(c.at("food-instacart").app_name, "Instacart");
  EXPECT_THROW(c.at("nope"), std::out_of_range);
}

TEST(Corpus, SaveLoadRoundTrip) {
  testkit::TempDir dir;
  auto c = load_corpus(testkit::sample("corpus.json"));
  save_corpus(c, dir / "c.json");
  EXPECT_EQ(load_corpus(dir / "c.json"), c);
}

TEST(Corpus, ShortScenarioGetsExactlyOneLint) {
  auto s = json(scenario_json("short", 100)).get<Scenario>();
  auto lints = validate_scenario(s);
  ASSERT_EQ(lints.size(), 1u);
  EXPECT_EQ(lints[0].code, LintCode::kWordCountBelow150);
  EXPECT_EQ(lint_name(lints[0].code), "WORD_COUNT_BELOW_150");
}

TEST(Corpus, BoundaryWordCountPasses) {
  auto s = scenario_json("edge", kMinScenarioWords).get<Scenario>();
  EXPECT_TRUE(validate_scenario(s).empty());
}

TEST(Corpus, MissingTitleAndInfoTypesLinted) {
  auto j = scenario_json("x", 200);
  j["screen_title"] = "  ";
  j["author_declared_info_types"] = {"location"};
  auto lints = validate_scenario(j.get<Scenario>());
  ASSERT_EQ(lints.size(), 2u);
  EXPECT_EQ(lints[0].code, LintCode::kEmptyScreenTitle);
  EXPECT_EQ(lints[1].code, LintCode::kInfoTypesIncomplete);
}

TEST(Corpus, SchemaErrorNamesRecordAndField) {
  json doc = json::array({scenario_json("a", 160), scenario_json("b", 160)});
  doc[1]["platform"] = "windows";
  try {
    corpus_from_json(doc);
    FAIL() << "expected CorpusSchemaError";
  } catch (const CorpusSchemaError& e) {
    EXPECT_EQ(e.record(), 1u);
    EXPECT_EQ(e.field(), "platform");
    EXPECT_NE(std::string(e.what()).find("record 1"), std::string::npos);
  }
}

TEST(Corpus, MissingFieldIsSchemaError) {
  json doc = json::array({scenario_json("a", 160)});
  doc[0].erase("text");
  EXPECT_THROW(corpus_from_json(doc), CorpusSchemaError);
}

TEST(Corpus, DuplicateIdsRejected) {
  json doc = json::array({scenario_json("a", 160), scenario_json("a", 170)});
  try {
    corpus_from_json(doc);
    FAIL();
  } catch (const CorpusSchemaError& e) {
    EXPECT_EQ(e.record(), 1u);
    EXPECT_EQ(e.field(), "id");
  }
}

TEST(Corpus, CategoryFrequencySplitsByPlatform) {
  auto c = load_corpus(testkit::sample("corpus.json"));
  auto f = category_frequency(c);
  EXPECT_EQ(f.apple_total + f.google_total, c.size());
  size_t sum = 0;
  for (const auto& [key, n] : f.counts) sum += n;
  EXPECT_EQ(sum, c.size());
  EXPECT_EQ(f.count("Food & Drink", Platform::kGoogle), 1u);
  EXPECT_EQ(f.count("Food & Drink", Platform::kApple), 0u);
  EXPECT_EQ(f.categories().size(), c.size());
}

TEST(Corpus, ContentHashTracksBytes) {
  testkit::TempDir dir;
  io::write_file_atomic(dir / "a.json", "[]");
  io::write_file_atomic(dir / "b.json", "[ ]");
  EXPECT_NE(corpus_content_hash(dir / "a.json"), corpus_content_hash(dir / "b.json"));
  EXPECT_EQ(corpus_content_hash(dir / "a.json"), io::sha256_hex("[]"));
}
