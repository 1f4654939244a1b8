#include <gtest/gtest.h>

#include <thread>

#include "test_util.hpp"
#include "uccx/checklist.hpp"

using namespace uccx;
using uccx::testkit::Gen;

namespace {

DefectRecord rec(const std::string& sid, const std::string& qid, bool yes, const std::string& inspector = "r1",
                 const std::string& prompt = "seed") {
  DefectRecord r;
  r.run_id = "run-1";
  r.scenario_id = sid;
  r.prompt_id = prompt;
  r.qid = qid;
  r.answer_yes = yes;
  r.is_defect = defect_for(*find_question(qid), yes);
  r.inspector_id = inspector;
  return r;
}

DefectContext ctx() { return {{"s1", "s2", "s3"}, {"seed", "refined", "refined_with_examples"}}; }

Corpus corpus_of(const std::vector<std::pair<std::string, std::string>>& id_category) {
  std::vector<Scenario> v;
  for (const auto& [id, cat] : id_category) {
    Scenario s;
    s.id = id;
    s.category = cat;
    s.text = "text";
    v.push_back(s);
  }
  return Corpus(v);
}

}  // namespace

TEST(Checklist, SixteenQuestionsByCategory) {
  const auto& qs = builtin_checklist();
  ASSERT_EQ(qs.size(), 16u);
  std::map<QuestionCategory, int> per;
  std::set<std::string> ids;
  for (const auto& q : qs) {
    ++per[q.category];
    ids.insert(q.qid);
  }
  EXPECT_EQ(per[QuestionCategory::kActor], 4);
  EXPECT_EQ(per[QuestionCategory::kGoal], 2);
  EXPECT_EQ(per[QuestionCategory::kDps], 5);
  EXPECT_EQ(per[QuestionCategory::kSteps], 5);
  EXPECT_EQ(ids.size(), 16u);
}

TEST(Checklist, VerbatimTexts) {
  EXPECT_EQ(find_question("dps.Q4")->text, "Is it clear who is performing the action in the data practice?");
  EXPECT_EQ(find_question("actor.Q1")->text,
            "Are there any actors that are not identified in the extracted UC-User, UC-System, or UC-ET components?");
  EXPECT_EQ(find_question("steps.Q2")->text,
            "Is there any step in the extracted UC-Steps component that does not match the goal or doesn’t help "
            "accomplish the goal?");
  EXPECT_EQ(find_question("goal.Q1")->text, "Is the right goal extracted from the scenario?");
  EXPECT_EQ(find_question("dps.Q9"), nullptr);
}

TEST(Checklist, PolarityFollowsPhrasing) {
  for (const auto& q : builtin_checklist()) {
    bool negative_phrasing = q.text.starts_with("Is the right goal") || q.text.starts_with("Is the extracted UC-Goal") ||
                             q.text.starts_with("Are all the") || q.text.starts_with("Is it clear");
    EXPECT_EQ(q.polarity, negative_phrasing ? Polarity::kDefectIfNo : Polarity::kDefectIfYes) << q.qid;
  }
  EXPECT_EQ(find_question("steps.Q4")->polarity, Polarity::kDefectIfYes);
}

TEST(Checklist, JsonExport) {
  auto j = checklist_to_json();
  ASSERT_EQ(j.size(), 16u);
  EXPECT_EQ(j[9]["qid"], "dps.Q4");
  EXPECT_EQ(j[9]["polarity"], "defect_if_no");
  EXPECT_EQ(j[9]["category"], "dps");
}

TEST(DefectRecordJson, DerivesAndChecksIsDefect) {
  auto j = json::parse(R"({"scenario_id":"s1","prompt_id":"seed","qid":"steps.Q4","answer":"yes","inspector_id":"r1"})");
  auto r = record_from_json(j);
  EXPECT_TRUE(r.is_defect);
  EXPECT_EQ(record_from_json(record_to_json(r)).key(), r.key());
  j["is_defect"] = false;
  EXPECT_THROW(record_from_json(j), ChecklistError);
  j.erase("is_defect");
  j["qid"] = "dps.Q9";
  EXPECT_THROW(record_from_json(j), ChecklistError);
  j["qid"] = "dps.Q1";
  j["answer"] = "maybe";
  EXPECT_THROW(record_from_json(j), ChecklistError);
}

TEST(DefectStore, UpsertsAndPersists) {
  testkit::TempDir dir;
  auto path = dir / "run/defects.jsonl";
  {
    DefectStore store(path, ctx());
    store.record(rec("s1", "dps.Q4", true));
    store.record(rec("s1", "dps.Q4", false));
    store.record(rec("s1", "dps.Q4", true, "r2"));
    auto snap = store.snapshot();
    ASSERT_EQ(snap.size(), 2u);
    EXPECT_TRUE(snap[0].is_defect);
    EXPECT_FALSE(snap[1].is_defect);
  }
  auto reread = read_defect_lines(path);
  ASSERT_EQ(reread.size(), 2u);
  EXPECT_FALSE(reread[0].answer_yes);
  EXPECT_TRUE(reread[1].answer_yes);
  DefectStore reopened(path, ctx());
  EXPECT_EQ(reopened.snapshot().size(), 2u);
}

TEST(DefectStore, RejectsUnknownIds) {
  testkit::TempDir dir;
  DefectStore store(dir / "d.jsonl", ctx());
  auto bad_q = rec("s1", "dps.Q1", true);
  bad_q.qid = "dps.Q9";
  EXPECT_THROW(store.record(bad_q), ChecklistError);
  EXPECT_THROW(store.record(rec("s9", "dps.Q1", true)), ChecklistError);
  EXPECT_THROW(store.record(rec("s1", "dps.Q1", true, "r1", "other")), ChecklistError);
  EXPECT_THROW(store.record(rec("s1", "dps.Q1", true, "")), ChecklistError);
  auto inconsistent = rec("s1", "dps.Q1", true);
  inconsistent.is_defect = true;
  EXPECT_THROW(store.record(inconsistent), ChecklistError);
  EXPECT_FALSE(fs::exists(dir / "d.jsonl"));
}

TEST(DefectStore, ConcurrentWritersKeepEveryLine) {
  testkit::TempDir dir;
  DefectStore store(dir / "d.jsonl", ctx());
  std::vector<std::thread> threads;
  const std::vector<std::string> qids = {"dps.Q1", "dps.Q2", "dps.Q3", "dps.Q4", "dps.Q5"};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (const auto& q : qids) store.record(rec("s2", q, true, "r" + std::to_string(t)));
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(store.snapshot().size(), 20u);
  EXPECT_EQ(read_defect_lines(dir / "d.jsonl").size(), 20u);
}

TEST(DefectSummary, CountsScenariosFlaggedByAnyInspector) {
  std::vector<DefectRecord> rs = {rec("s1", "steps.Q4", true, "r1"), rec("s1", "steps.Q4", true, "r2"),
                                  rec("s2", "steps.Q4", false, "r1"), rec("s2", "steps.Q4", true, "r2"),
                                  rec("s3", "steps.Q4", false), rec("s3", "dps.Q4", false),
                                  rec("s1", "dps.Q4", true), rec("s9", "dps.Q4", false)};
  auto s = defect_summary(rs, {"seed", "refined"}, {"s1", "s2", "s3"});
  EXPECT_EQ(s.at("seed", "steps.Q4"), 2u);
  EXPECT_EQ(s.at("seed", "dps.Q4"), 1u);
  EXPECT_EQ(s.at("refined", "steps.Q4"), 0u);
  EXPECT_EQ(s.qids.size(), 16u);
  EXPECT_EQ(s.scenario_count, 3u);
}

TEST(DefectSummaryProperty, AddingDefectNeverLowersCount) {
  Gen g(41);
  const std::vector<std::string> sids = {"s1", "s2", "s3"};
  std::vector<std::string> qids;
  for (const auto& q : builtin_checklist()) qids.push_back(q.qid);
  for (int i = 0; i < 200; ++i) {
    std::vector<DefectRecord> rs;
    for (size_t n = g.below(20); n > 0; --n) rs.push_back(rec(g.pick(sids), g.pick(qids), g.chance(0.5), "r1"));
    auto before = defect_summary(rs, {"seed"}, sids);
    auto extra = rec(g.pick(sids), g.pick(qids), false, "r2");
    if (!extra.is_defect) extra = rec(extra.scenario_id, extra.qid, true, "r2");
    rs.push_back(extra);
    auto after = defect_summary(rs, {"seed"}, sids);
    for (const auto& q : qids) {
      EXPECT_GE(after.at("seed", q), before.at("seed", q));
      EXPECT_LE(after.at("seed", q), sids.size());
    }
    EXPECT_EQ(after.at("seed", extra.qid) >= 1, true);
  }
}

TEST(Sampling, OnePerCategoryDeterministic) {
  auto c = corpus_of({{"a1", "A"}, {"a2", "A"}, {"b1", "B"}, {"c1", "C"}, {"c2", "C"}, {"c3", "C"}});
  auto s = sample_by_category(c, 7);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s, sample_by_category(c, 7));
  EXPECT_TRUE(s[0] == "a1" || s[0] == "a2");
  EXPECT_EQ(s[1], "b1");
  EXPECT_EQ(s[2][0], 'c');
  std::set<std::vector<std::string>> distinct;
  for (uint64_t seed = 0; seed < 50; ++seed) distinct.insert(sample_by_category(c, seed));
  EXPECT_GT(distinct.size(), 1u);
}

TEST(Sampling, SingleCategoryAndEmptyCorpus) {
  auto c = corpus_of({{"x", "Only"}, {"y", "Only"}});
  EXPECT_EQ(sample_by_category(c, 1).size(), 1u);
  EXPECT_THROW(sample_by_category(Corpus(), 1), ChecklistError);
}

TEST(Sampling, UniformBelowIsPortable) {
  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  for (int i = 0; i < 100; ++i) {
    auto x = uniform_below(a, 16);
    EXPECT_LT(x, 16u);
    EXPECT_EQ(x, b() % 16);  // 2^64 is a multiple of 16, so no rejection
  }
}
