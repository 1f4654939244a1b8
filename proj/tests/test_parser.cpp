#include <gtest/gtest.h>

#include "generators.hpp"
#include "uccx/llm.hpp"
#include "uccx/parser.hpp"

using namespace uccx;
using uccx::testkit::Gen;
using uccx::testkit::random_components;

namespace {

using Strings = std::vector<std::string>;

size_t count_kind(const ParseReport& r, WarningKind k) {
  return std::count_if(r.warnings.begin(), r.warnings.end(), [k](const ParseWarning& w) { return w.kind == k; });
}

const char* kSeedInstacart =
    "UC-Name: View Past Orders and Account Settings\n"
    "UC-Goal: To allow the user to view past orders and modify account settings\n"
    "UC-User: User\n"
    "UC-System: Instacart App\n"
    "UC-ET: None\n"
    "UC-DPs:\n"
    "- Collection\n"
    "- Usage\n"
    "- Sharing\n"
    "UC-Steps:\n"
    "1. Open Instacart app on phone\n"
    "2. Click on icon in top left corner\n"
    "3. Select Your Orders to view past orders and receipts\n"
    "4. Add items from previous orders to cart\n"
    "5. View account settings and reset passwords\n"
    "6. View and cancel Instacart+ subscription\n"
    "7. View available promos and discounts\n"
    "8. Click on Your Lists to create or modify personal grocery lists\n";

}  // namespace

TEST(Parser, InstacartSeedResponse) {
  auto r = parse_response(kSeedInstacart);
  EXPECT_EQ(r.components.name, Strings{"View Past Orders and Account Settings"});
  EXPECT_EQ(r.components.goal, Strings{"To allow the user to view past orders and modify account settings"});
  EXPECT_EQ(r.components.user, Strings{"User"});
  EXPECT_EQ(r.components.system, Strings{"Instacart App"});
  EXPECT_TRUE(r.components.external_entities.empty());
  EXPECT_EQ(r.components.data_practices, (Strings{"Collection", "Usage", "Sharing"}));
  ASSERT_EQ(r.components.steps.size(), 8u);
  EXPECT_EQ(r.components.steps.front(), "Open Instacart app on phone");
  EXPECT_EQ(r.components.steps.back(), "Click on Your Lists to create or modify personal grocery lists");
  EXPECT_EQ(count_kind(r, WarningKind::kNullSentinelNormalized), 1u);
  EXPECT_EQ(count_kind(r, WarningKind::kMissingHeading), 0u);
}

TEST(Parser, SentinelsParseToEmpty) {
  for (std::string s : {"None", "Not Mentioned", "None Mentioned", "N/A", "none.", "\"None\"", "Not applicable"}) {
    auto r = parse_response("UC-ET: " + s + "\n");
    EXPECT_TRUE(r.components.external_entities.empty()) << s;
    EXPECT_TRUE(r.has(WarningKind::kNullSentinelNormalized)) << s;
    auto sub = parse_response("UC-Steps:\n- " + s + "\n");
    EXPECT_TRUE(sub.components.steps.empty()) << s;
  }
  EXPECT_FALSE(is_null_sentinel("Nonetheless"));
  EXPECT_FALSE(is_null_sentinel("No"));
}

TEST(Parser, CommaListForShortComponents) {
  auto r = parse_response("UC-User: User, Admin\nUC-ET: Google Pay, \"Visa, Inc.\"\nUC-Goal: Order food, fast\n");
  EXPECT_EQ(r.components.user, (Strings{"User", "Admin"}));
  EXPECT_EQ(r.components.external_entities, (Strings{"Google Pay", "Visa, Inc."}));
  EXPECT_EQ(r.components.goal, Strings{"Order food, fast"});
}

TEST(Parser, BulletVariants) {
  auto r = parse_response(
      "UC-Steps:\n"
      "* tap menu\n"
      "• open orders\n"
      "3) pick one\n"
      "  - reorder\n");
  EXPECT_EQ(r.components.steps, (Strings{"tap menu", "open orders", "pick one", "reorder"}));
}

TEST(Parser, MarkdownHeadingsAndCase) {
  auto r = parse_response("Sure! Here is the use case.\n\n**UC-Name:** Order\n## uc-goal\n- Order food\nUC-External Entities: Stripe\n");
  EXPECT_EQ(r.components.name, Strings{"Order"});
  EXPECT_EQ(r.components.goal, Strings{"Order food"});
  EXPECT_EQ(r.components.external_entities, Strings{"Stripe"});
}

TEST(Parser, DictFormatFlattened) {
  auto r = parse_response(
      "UC-DPs:\n"
      "- Data Action: collect\n"
      "  Data Element: location\n"
      "- Data Sharing: advertisers\n"
      "  Data Action: share\n"
      "  Data Element: email\n"
      "  Data Purpose: marketing\n");
  EXPECT_EQ(r.components.data_practices, (Strings{"collect location", "advertisers share email marketing"}));
  EXPECT_TRUE(r.has(WarningKind::kDictFormatFlattened));

  auto single = parse_response("UC-DPs:\nData Action: collect\nData Element: location\n");
  EXPECT_EQ(single.components.data_practices, Strings{"collect location"});
}

TEST(Parser, DictGroupsSeparatedByLabels) {
  auto r = parse_response(
      "UC-DPs:\n"
      "Data Practice 1:\n"
      "- **Data Action**: collect\n"
      "- **Data Element**: height\n"
      "Data Practice 2:\n"
      "- Data Action: use\n"
      "- Data Element: name\n");
  EXPECT_EQ(r.components.data_practices, (Strings{"collect height", "use name"}));
}

TEST(Parser, GarbageGivesSevenMissingHeadings) {
  auto r = parse_response("I'm sorry, I can't help with that.");
  EXPECT_TRUE(r.components.empty());
  EXPECT_EQ(r.warnings.size(), 7u);
  EXPECT_EQ(count_kind(r, WarningKind::kMissingHeading), 7u);
}

TEST(Parser, UnknownHeadingAndTrailingProse) {
  auto r = parse_response(
      "UC-Name: Order\n"
      "UC-Preconditions: logged in\n"
      "UC-Steps:\n"
      "- open app\n"
      "- pay\n"
      "\n"
      "Note: steps may vary by device.\n");
  EXPECT_EQ(r.components.steps, (Strings{"open app", "pay"}));
  EXPECT_EQ(count_kind(r, WarningKind::kUnparsedTrailingText), 2u);
}

TEST(Parser, LeadInLineAboveListSkipped) {
  auto r = parse_response("UC-Steps:\nSteps taken:\n- open app\n- pay\n");
  EXPECT_EQ(r.components.steps, (Strings{"open app", "pay"}));
}

TEST(Parser, TotalOnArbitraryBytes) {
  Gen g(5);
  const std::vector<std::string> pieces = {"UC-", "Goal", ":", "\n", "- ", "None", ",", "\"", "•", "1.", "Data Action: ",
                                           "**", "x", " ", "\xff", "UC-DPs", "\r\n"};
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (size_t n = g.below(40); n > 0; --n) s += g.pick(pieces);
    EXPECT_NO_THROW(parse_response(s));
  }
}

// ---------------------------------------------------------------------------
// Round trip

TEST(ParserRoundTrip, RenderThenParseIsIdentity) {
  Gen g(2024);
  for (int i = 0; i < 1000; ++i) {
    auto c = random_components(g);
    auto rendered = render_response(c);
    auto r = parse_response(rendered);
    ASSERT_EQ(r.components, c) << "case " << i << "\n" << rendered;
    EXPECT_FALSE(r.has(WarningKind::kMissingHeading));
    EXPECT_FALSE(r.has(WarningKind::kUnparsedTrailingText));
  }
}

TEST(ParserRoundTrip, AllEmptyRendersSevenNones) {
  auto rendered = render_response(UCComponents{});
  size_t nones = 0;
  for (const auto& line : text::split_lines(rendered)) nones += line.ends_with(": None");
  EXPECT_EQ(nones, 7u);
  EXPECT_TRUE(parse_response(rendered).components.empty());
}
