// Copyright 2026 The Guideline Structure Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "structure/evaluation.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "structure/error.hpp"
#include "structure/pipeline.hpp"

namespace structure {
namespace {

TEST(ComputePrTest, Examples) {
  EXPECT_DOUBLE_EQ(ComputePr(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(ComputePr(0.0, 0.7), 0.0);
  EXPECT_DOUBLE_EQ(ComputePr(0.0, 0.0), 0.0);
  EXPECT_NEAR(ComputePr(0.8, 0.4), 0.5333333333333333, 1e-15);
  EXPECT_NEAR(ComputePr(1.0, 0.5), 2.0 / 3.0, 1e-15);
}

TEST(ComputePrTest, OutOfRangeIsAnError) {
  EXPECT_THROW(ComputePr(1.5, 0.2), Error);
  EXPECT_THROW(ComputePr(0.2, -0.1), Error);
  EXPECT_THROW(ComputePr(std::nan(""), 0.2), Error);
}

TEST(ComputePrTest, SymmetricAndIdempotent) {
  testing::Rng rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng), r = u(rng);
    EXPECT_EQ(ComputePr(p, r), ComputePr(r, p));
    EXPECT_EQ(ComputePr(p, p), p);
    EXPECT_NEAR(ComputePr(p, r), testing::OraclePr(p, r), 1e-12);
  }
}

Segment Seg(const std::string& id, SegmentKind kind, std::size_t a, std::size_t b,
            const std::string& text) {
  Segment s;
  s.id = id;
  s.kind = kind;
  s.span = {a, b};
  s.text = text;
  s.placement = kind == SegmentKind::kCondition ? Placement::kDetached : Placement::kNotApplicable;
  return s;
}

TEST(EvaluateSegmentsTest, PerfectPrediction) {
  const std::vector<Segment> gold = {Seg("c1", SegmentKind::kCondition, 0, 0, "Chez l'adulte"),
                                     Seg("r1", SegmentKind::kRecommendation, 1, 1, "le repos")};
  const auto s = EvaluateSegments(gold, "d", gold, "d", MatchMode::kExact);
  EXPECT_EQ(s.condition.precision, 1.0);
  EXPECT_EQ(s.condition.recall, 1.0);
  EXPECT_EQ(s.recommendation.pr, 1.0);
}

TEST(EvaluateSegmentsTest, HalfTheConditionsFound) {
  const std::vector<Segment> gold = {Seg("c1", SegmentKind::kCondition, 0, 0, "si a"),
                                     Seg("c2", SegmentKind::kCondition, 3, 3, "si b")};
  const std::vector<Segment> pred = {Seg("c1", SegmentKind::kCondition, 0, 0, "si a")};
  const auto s = EvaluateSegments(pred, "d", gold, "d", MatchMode::kExact);
  EXPECT_EQ(s.condition.precision, 1.0);
  EXPECT_EQ(s.condition.recall, 0.5);
  EXPECT_NEAR(s.condition.pr, 2.0 / 3.0, 1e-12);
}

TEST(EvaluateSegmentsTest, EmptyPrediction) {
  const std::vector<Segment> gold = {Seg("c1", SegmentKind::kCondition, 0, 0, "si a")};
  const auto s = EvaluateSegments({}, "d", gold, "d", MatchMode::kExact);
  EXPECT_EQ(s.condition.precision, 0.0);
  EXPECT_EQ(s.condition.recall, 0.0);
  EXPECT_EQ(s.condition.pr, 0.0);
}

TEST(EvaluateSegmentsTest, DocumentMismatch) {
  try {
    EvaluateSegments({}, "a", {}, "b", MatchMode::kExact);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
}

TEST(EvaluateSegmentsTest, OverlapMode) {
  const std::vector<Segment> gold = {
      Seg("r1", SegmentKind::kRecommendation, 0, 1, "le repos est conseillé en cas de fatigue")};
  const std::vector<Segment> close = {
      Seg("r1", SegmentKind::kRecommendation, 1, 1, "le repos est conseillé")};
  const std::vector<Segment> far = {Seg("r1", SegmentKind::kRecommendation, 1, 1, "le repos")};
  EXPECT_EQ(EvaluateSegments(close, "d", gold, "d", MatchMode::kExact).recommendation.matched, 0u);
  EXPECT_EQ(EvaluateSegments(close, "d", gold, "d", MatchMode::kOverlap).recommendation.matched,
            1u);
  EXPECT_EQ(EvaluateSegments(far, "d", gold, "d", MatchMode::kOverlap).recommendation.matched, 0u);
  // One-to-one: two predictions cannot both claim one gold segment.
  std::vector<Segment> twice = close;
  twice.push_back(Seg("r2", SegmentKind::kRecommendation, 0, 0, "le repos est conseillé en"));
  const auto s = EvaluateSegments(twice, "d", gold, "d", MatchMode::kOverlap);
  EXPECT_EQ(s.recommendation.matched, 1u);
  EXPECT_EQ(s.recommendation.predicted, 2u);
}

TreeNode N(const std::string& id, const std::string& parent, std::size_t prop) {
  TreeNode n;
  n.id = id;
  n.kind = id[0] == 'c' ? SegmentKind::kCondition : SegmentKind::kRecommendation;
  n.placement = n.kind == SegmentKind::kCondition ? Placement::kDetached
                                                  : Placement::kNotApplicable;
  n.parent = parent;
  n.span = {prop, prop};
  n.sentence = prop;
  n.text = id;
  return n;
}

ScopeTree ThreeConditions(const std::string& r2_parent) {
  ScopeTree t;
  t.doc_id = "d";
  t.nodes = {N("c1", "", 0),   N("r1", "c1", 1), N("r2", r2_parent, 2), N("c2", "", 3),
             N("r3", "c2", 4), N("c3", "", 5),   N("r4", "c3", 6)};
  return t;
}

TEST(EvaluateScopeTest, IdenticalTrees) {
  const auto t = ThreeConditions("c1");
  const auto acc = EvaluateScope(t, t);
  EXPECT_EQ(acc.per_couple, 1.0);
  EXPECT_EQ(acc.per_condition, 1.0);
}

TEST(EvaluateScopeTest, OneMisplacedLeaf) {
  const auto gold = ThreeConditions("c1");
  const auto pred = ThreeConditions("");
  ASSERT_EQ(GoldCouples(gold).size(), 10u);
  const auto acc = EvaluateScope(pred, gold);
  EXPECT_NEAR(acc.per_couple, 0.9, 1e-12);
  EXPECT_NEAR(acc.per_condition, 2.0 / 3.0, 1e-12);
}

TEST(EvaluateScopeTest, AllAtRootAgainstNested) {
  ScopeTree gold;
  gold.doc_id = "d";
  gold.nodes = {N("c1", "", 0), N("c2", "c1", 1), N("r1", "c2", 2)};
  ScopeTree pred = gold;
  for (auto& n : pred.nodes) n.parent = "";
  EXPECT_EQ(EvaluateScope(pred, gold).per_condition, 0.0);
}

TEST(EvaluateScopeTest, SegmentMismatch) {
  auto pred = ThreeConditions("c1");
  pred.nodes.pop_back();
  EXPECT_THROW(EvaluateScope(pred, ThreeConditions("c1")), Error);
}

TEST(ExtractExamplesTest, SingleConditionTwoChildren) {
  const auto doc = ParsePlainText(
      "En cas de fièvre :\n- le repos est conseillé ;\n- une hydratation est recommandée.\n");
  const auto tree = RunPipeline(doc, {}).tree;
  const auto gold = GoldAnnotation::FromTree(tree);
  const auto couples = ExtractExamples(gold, doc, RelationLexicons::FrenchDefaults());
  ASSERT_EQ(couples.size(), 2u);
  EXPECT_EQ(couples[0].label, CoupleLabel::kPositive);
  EXPECT_EQ(couples[1].label, CoupleLabel::kPositive);
}

TEST(ExtractExamplesTest, FixtureF1Counts) {
  const auto doc = ParseStructuredInput(ReadFile(testing::FixturePath("f1.json")));
  const auto gold = GoldAnnotation::FromTree(RunPipeline(doc, {}).tree);
  const auto couples = ExtractExamples(gold, doc, RelationLexicons::FrenchDefaults());
  // c1: r1+ r2+ r3- c2- r4- r5-; c2: r4+ r5+; c3 (second section): r6+.
  std::size_t pos = 0, neg = 0;
  for (const auto& c : couples) (c.label == CoupleLabel::kPositive ? pos : neg)++;
  EXPECT_EQ(pos, 5u);
  EXPECT_EQ(neg, 4u);
  for (const auto& c : couples) {
    EXPECT_FALSE(c.condition_id == "c1" && c.segment_id == "r6");  // section barrier
  }
}

TEST(InformationGainTest, Examples) {
  auto make = [](const std::vector<std::pair<bool, bool>>& rows) {
    std::vector<LabeledCouple> out;
    for (auto [feature, positive] : rows) {
      LabeledCouple c;
      c.features.same_paragraph = feature;
      c.label = positive ? CoupleLabel::kPositive : CoupleLabel::kNegative;
      out.push_back(c);
    }
    return out;
  };
  EXPECT_NEAR(InformationGain(make({{true, true}, {false, false}}), "same_paragraph"), 1.0,
              1e-12);
  EXPECT_NEAR(InformationGain(make({{true, true}, {true, false}}), "same_paragraph"), 0.0, 1e-12);
  const auto derived = make({{true, true}, {true, true}, {false, true}, {false, false}});
  EXPECT_NEAR(InformationGain(derived, "same_paragraph"), 0.311278124459133, 1e-12);
  EXPECT_THROW(InformationGain(derived, "colour"), Error);
  EXPECT_THROW(InformationGain({}, "same_paragraph"), Error);
}

TEST(InformationGainTest, BoundedByLabelEntropy) {
  testing::Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto couples = testing::RandomCouples(rng, 40);
    std::vector<bool> labels;
    std::vector<std::string> self;
    for (const auto& c : couples) {
      labels.push_back(c.label == CoupleLabel::kPositive);
      self.push_back(labels.back() ? "+" : "-");
    }
    // The label itself as a feature recovers the full label entropy.
    const double label_entropy = testing::OracleInformationGain(self, labels);
    for (const auto& name : FeatureNames()) {
      const double ig = InformationGain(couples, name);
      EXPECT_GE(ig, 0.0);
      EXPECT_LE(ig, label_entropy + 1e-12);
    }
  }
}

TEST(RankFeaturesTest, SortedByGain) {
  testing::Rng rng(4);
  const auto ranks = RankFeatures(testing::RandomCouples(rng, 100));
  ASSERT_EQ(ranks.size(), FeatureNames().size());
  for (std::size_t i = 1; i < ranks.size(); ++i) {
    EXPECT_GE(ranks[i - 1].information_gain, ranks[i].information_gain);
  }
}

TEST(ReportTest, ValuesStayInUnitInterval) {
  const auto doc = ParseStructuredInput(ReadFile(testing::FixturePath("f1.json")));
  const auto result = RunPipeline(doc, {});
  const auto gold = GoldAnnotation::FromTree(result.tree);
  const EvaluationCase c{&result.doc, &gold, &result.segments};
  const auto report = EvaluateCorpus({c}, RelationLexicons::FrenchDefaults());
  EXPECT_EQ(report.segment_pr_condition(), 1.0);
  EXPECT_EQ(report.segment_pr_recommendation(), 1.0);
  EXPECT_EQ(report.scope_accuracy_per_couple(), 1.0);
  EXPECT_EQ(report.scope_accuracy_per_condition(), 1.0);
  const auto j = ReportToJson(report);
  for (const char* key : {"segment_pr_condition", "segment_pr_recommendation",
                          "scope_accuracy_per_couple", "scope_accuracy_per_condition"}) {
    EXPECT_GE(j[key].get<double>(), 0.0);
    EXPECT_LE(j[key].get<double>(), 1.0);
  }
  EXPECT_TRUE(j["per_rule"].contains("EXC_CONNECTOR_EXCLUDE"));
}

}  // namespace
}  // namespace structure
