// One PASS/FAIL line per primary acceptance criterion. Exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "generators.hpp"
#include "uccx/workbench.hpp"

using namespace uccx;
using namespace uccx::testkit;

namespace {

using Strings = std::vector<std::string>;

constexpr double kTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (!out_.detail.empty()) out_.detail += "; ";
      out_.detail += what;
    }
  }
  void note(const std::string& s) {
    if (out_.pass) out_.detail = s;
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

bool near(double a, double b, double tol = kTol) { return std::fabs(a - b) <= tol; }

std::string num(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

std::map<std::string, GroundTruth> sample_truth() {
  std::map<std::string, GroundTruth> out;
  for (const auto& [id, c] : load_records(sample("ground_truth.json")).components()) {
    out[id] = {id, c, GroundTruthSource::kAdjudicated};
  }
  return out;
}

Outcome oracle_end_to_end() {
  Check c;
  TempDir dir;
  auto t0 = std::chrono::steady_clock::now();
  auto corpus = load_corpus(sample("corpus.json"));
  ExtractOptions o;
  o.corpus_path = sample("corpus.json");
  o.preset = presets::seed();
  o.provider = std::make_shared<MockProvider>(MockProvider::from_ground_truth(corpus, sample_truth()));
  o.runs_root = dir / "runs";
  o.run_id = "acceptance-oracle";
  auto ex = cmd_extract(o);
  BagEmbedder bag;
  EvaluateOptions eo;
  eo.ground_truth_path = sample("ground_truth.json");
  eo.predictions_path = ex.run.predictions();
  eo.embedder = &bag;
  eo.runs_root = dir / "runs";
  auto ev = cmd_evaluate(eo);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  c.expect(ex.predictions.entries.size() == 16, "expected 16 scenarios");
  c.expect(ex.manifest.provider_id == "mock", "provider is not the offline mock");
  const char* cols[] = {"EM", "F1", "F1_pre", "SM"};
  for (size_t k = 0; k < 7; ++k) {
    for (size_t m = 0; m < 4; ++m) {
      double v = ev.table[k][m];
      c.expect(near(v, 1.0), std::string(component_label(kAllComponents[k])) + " " + cols[m] + " = " + num(v));
    }
  }
  c.expect(secs < 5.0, "runtime " + num(secs) + " s");
  c.note("16 scenarios, 28 cells = 1 (tol 1e-9), " + fixed(secs, 3) + " s");
  return c.result();
}

Outcome metric_hand_oracles() {
  Check c;
  Strings gt = {"view past orders", "reset password"};
  Strings pred = {"view orders", "reset passwords"};
  auto raw = token_f1(gt, pred, TokenPipeline::raw());
  auto pre = token_f1(gt, pred, TokenPipeline::preprocessed());
  c.expect(near(raw.precision, 3.0 / 4) && near(raw.recall, 3.0 / 5) && near(raw.f1, 2.0 / 3),
           "raw = (" + num(raw.precision) + ", " + num(raw.recall) + ", " + num(raw.f1) + ")");
  c.expect(near(pre.precision, 1.0) && near(pre.recall, 4.0 / 5) && near(pre.f1, 8.0 / 9),
           "pre = (" + num(pre.precision) + ", " + num(pre.recall) + ", " + num(pre.f1) + ")");

  auto table_gt = load_records(reference("instacart_ground_truth.json")).components().at("food-instacart");
  auto table_pred = load_records(reference("instacart_prediction.json")).components().at("food-instacart");
  c.expect(table_gt.user == Strings{"I"} && table_pred.user == Strings{"User"}, "UC-User fixtures changed");
  c.expect(exact_match(table_gt.user, table_pred.user) == 0, "EM(I, User) != 0");

  auto s = make_scenario("k", "alpha beta");
  std::vector<AnnotationSet> sets = {{"k", "a", {token_span(s, ComponentKind::kGoal, 0, 1)}},
                                     {"k", "b", {token_span(s, ComponentKind::kGoal, 0, 1)}},
                                     {"k", "c", {token_span(s, ComponentKind::kGoal, 0, 0)}}};
  std::vector<Scenario> scenarios{s};
  double k = fleiss_kappa(scenarios, sets, ComponentKind::kGoal);
  c.expect(near(k, -0.2), "kappa = " + num(k));
  c.note("F1 raw (3/4, 3/5, 2/3), pre (1, 4/5, 8/9), EM 0, kappa " + fixed(k, 6));
  return c.result();
}

Outcome round_trip() {
  Check c;
  Gen g(20240601);
  int ok = 0;
  int with_empty = 0;
  for (int i = 0; i < 1000; ++i) {
    auto comps = random_components(g);
    bool has_empty = false;
    for (auto kind : kAllComponents) has_empty |= comps[kind].empty();
    with_empty += has_empty;
    if (parse_response(render_response(comps)).components == comps) ++ok;
  }
  c.expect(ok == 1000, std::to_string(ok) + "/1000 round-tripped");
  c.expect(with_empty > 0, "no case exercised an empty slot");
  c.note("1000/1000 identical, " + std::to_string(with_empty) + " with \"None\" slots");
  return c.result();
}

Outcome sentinels() {
  Check c;
  for (std::string s : {"None", "Not Mentioned", "None Mentioned", "N/A"}) {
    auto inline_form = parse_response("UC-ET: " + s + "\n").components.external_entities;
    auto list_form = parse_response("UC-ET:\n- " + s + "\n").components.external_entities;
    c.expect(inline_form.empty() && list_form.empty(), "\"" + s + "\" not empty");
  }
  c.note("4/4 sentinels parse to []");
  return c.result();
}

Outcome preset_fidelity() {
  Check c;
  const std::string dps =
      "Data practices are specific kinds of interactions between users, systems, or external entities. "
      "Data practices convey privacy requirements. A privacy requirement consists of actors with whom the "
      "data is shared, actions that are performed on the data, data elements on which actions are performed, "
      "and purposes for which data maybe be acted upon.";
  const std::string steps =
      "A step is an interaction between the user, system, or external entity that is not a data practice. "
      "A step is an action the user, system, or external entity performs.";
  const Strings examples = {"app uses my location",
                            "app collects my height",
                            "user resets password",
                            "user makes purchases on the app",
                            "app uses my name, age, and financial history",
                            "user opens the Instacart app on their phone",
                            "user check how many lives are left",
                            "user taps on the safety section at the bottom of the home screen",
                            "user changes sound quality for audio tracks",
                            "user selects a course to continue"};
  auto s = make_scenario("p", "I open the app and look at my orders.");
  auto refined = render(presets::refined(), s);
  auto with_examples = render(presets::refined_with_examples(), s);
  for (const auto* out : {&refined, &with_examples}) {
    c.expect(out->find(dps) != std::string::npos, "refined UC-DPs definition missing");
    c.expect(out->find(steps) != std::string::npos, "refined UC-Steps definition missing");
  }
  int found = 0;
  for (const auto& e : examples) {
    bool hit = with_examples.find(e) != std::string::npos;
    found += hit;
    c.expect(hit, "example missing: " + e);
  }
  c.note("both refined definitions in 2 presets, " + std::to_string(found) + "/10 examples verbatim");
  return c.result();
}

Outcome stopword_anomaly() {
  Check c;
  auto raw = token_f1({"I"}, {"I"}, TokenPipeline::raw());
  auto pre = token_f1({"I"}, {"I"}, TokenPipeline::preprocessed());
  c.expect(raw.convention == F1Convention::kComputed && raw.precision == 1 && raw.recall == 1 && raw.f1 == 1,
           "raw not (1,1,1)");
  c.expect(pre.convention == F1Convention::kBothEmpty && pre.gt_unique == 0 && pre.pred_unique == 0,
           "preprocessed did not fall back to the empty-set convention");
  c.note("raw (1,1,1) computed; preprocessed token sets {} vs {} -> empty-set convention");
  return c.result();
}

Outcome report_shape() {
  Check c;
  auto metrics_header = text::split_lines(metrics_csv(MetricTable{})).front();
  c.expect(metrics_header == "UC Component,EM,F1 without Pre-Processing,F1 with Pre-Processing,SM",
           "metrics header: " + metrics_header);
  auto rows = text::split_lines(metrics_csv(MetricTable{}));
  const Strings labels = {"UC-Name", "UC-Goal", "UC-User", "UC-System", "UC-ET", "UC-DPs", "UC-Steps"};
  for (size_t k = 0; k < 7; ++k) c.expect(rows[k + 1].starts_with(labels[k] + ","), "row order: " + rows[k + 1]);

  auto ref = load_paper_reference();
  auto defect_header = text::split_lines(defect_summary_csv(reference_defect_summary(ref))).front();
  c.expect(defect_header ==
               "Prompt,UC-DPs Q1,UC-DPs Q2,UC-DPs Q3,UC-DPs Q4,UC-DPs Q5,UC-Steps Q1,UC-Steps Q2,UC-Steps Q3,"
               "UC-Steps Q4,UC-Steps Q5",
           "defect header: " + defect_header);

  std::map<std::string, UCComponents> gts = load_records(sample("ground_truth.json")).components();
  auto s1 = study1_text(study1(gts), &ref.table8);
  c.expect(s1.find("Paper frequency") != std::string::npos && s1.find("47") != std::string::npos &&
               s1.find("45") != std::string::npos && s1.find("50") != std::string::npos,
           "study1 reference 47/45/50 not rendered");
  c.expect(ref.table8.goal == 47 && ref.table8.data_practices == 45 && ref.table8.steps == 50, "table8 fixture values");
  auto m = metrics_text(MetricTable{}, &ref.table7);
  c.expect(m.find("Paper SM") != std::string::npos && m.find(fixed(ref.table7[2][1], 3)) != std::string::npos,
           "metrics reference columns missing");
  c.note("metrics and defect headers exact; reference 47/45/50 and reference metric columns rendered beside current");
  return c.result();
}

Outcome table9_fixture() {
  Check c;
  auto ref = load_paper_reference();
  auto s = reference_defect_summary(ref);
  const std::map<std::string, std::vector<size_t>> expected = {
      {"seed", {0, 0, 2, 12, 5, 2, 0, 14, 16, 2}},
      {"refined", {0, 0, 0, 2, 7, 0, 1, 6, 13, 0}},
      {"refined_with_examples", {0, 0, 0, 2, 5, 2, 2, 5, 11, 2}},
  };
  auto qids = defect_table_qids();
  int cells = 0;
  for (const auto& [prompt, counts] : expected) {
    for (size_t i = 0; i < qids.size(); ++i) {
      size_t got = s.at(prompt, qids[i]);
      c.expect(got == counts[i], prompt + " " + qids[i] + " = " + std::to_string(got));
      cells += got == counts[i];
    }
  }
  c.expect(s.at("seed", "steps.Q4") == 16 && s.at("refined_with_examples", "steps.Q4") == 11, "steps.Q4 anchors");
  c.note(std::to_string(cells) + "/30 cells; seed steps.Q4 = 16, Prompt#2 steps.Q4 = 11");
  return c.result();
}

Outcome kappa_properties() {
  Check c;
  Gen g(777);
  int permuted = 0;
  int perfect = 0;
  for (int i = 0; i < 200; ++i) {
    auto f = random_annotation_fixture(g, ComponentKind::kSteps);
    double before = fixture_kappa(f, ComponentKind::kSteps);
    g.shuffle(f.sets);
    permuted += near(fixture_kappa(f, ComponentKind::kSteps), before, 1e-12);
    for (size_t r = 1; r < f.sets.size(); ++r) f.sets[r].spans = f.sets[0].spans;
    perfect += fixture_kappa(f, ComponentKind::kSteps) == 1.0;
  }
  c.expect(permuted == 200, std::to_string(permuted) + "/200 permutation invariant");
  c.expect(perfect == 200, std::to_string(perfect) + "/200 perfect agreement = 1");
  c.note("200/200 permutation invariant, 200/200 identical raters = 1.0");
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle end-to-end", oracle_end_to_end},
      {"metric hand-oracles", metric_hand_oracles},
      {"render/parse round trip", round_trip},
      {"null sentinels", sentinels},
      {"preset fidelity", preset_fidelity},
      {"stopword anomaly", stopword_anomaly},
      {"report shape", report_shape},
      {"defect table fixture", table9_fixture},
      {"kappa properties", kappa_properties},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %d. %s: %s\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures;
}
