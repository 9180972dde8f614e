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

#include <algorithm>
#include <cmath>
#include <set>

#include "structure/error.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

double Entropy(std::size_t positives, std::size_t total) {
  if (total == 0 || positives == 0 || positives == total) return 0.0;
  const double p = static_cast<double>(positives) / static_cast<double>(total);
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::size_t TokenOverlap(std::string_view a, std::string_view b) {
  std::multiset<std::string> left;
  for (auto& t : text::TokenStrings(a)) left.insert(std::move(t));
  std::size_t shared = 0;
  for (const auto& t : text::TokenStrings(b)) {
    auto it = left.find(t);
    if (it != left.end()) {
      ++shared;
      left.erase(it);
    }
  }
  return shared;
}

bool Matches(const Segment& p, const Segment& g, MatchMode mode) {
  if (p.kind != g.kind) return false;
  if (mode == MatchMode::kExact) return p.span == g.span;
  if (!p.span.Overlaps(g.span)) return false;
  const std::size_t longest =
      std::max(text::TokenStrings(p.text).size(), text::TokenStrings(g.text).size());
  if (longest == 0) return false;
  return 2 * TokenOverlap(p.text, g.text) >= longest;
}

void Score(PrScore& score, const std::vector<Segment>& predicted,
           const std::vector<Segment>& gold, SegmentKind kind, MatchMode mode) {
  std::vector<const Segment*> pred;
  std::vector<const Segment*> ref;
  for (const auto& s : predicted) {
    if (s.kind == kind) pred.push_back(&s);
  }
  for (const auto& s : gold) {
    if (s.kind == kind) ref.push_back(&s);
  }
  auto by_position = [](const Segment* a, const Segment* b) {
    return std::tie(a->span.first, a->span.last) < std::tie(b->span.first, b->span.last);
  };
  std::stable_sort(pred.begin(), pred.end(), by_position);
  std::stable_sort(ref.begin(), ref.end(), by_position);
  std::vector<bool> used(pred.size(), false);
  for (const Segment* g : ref) {
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (!used[i] && Matches(*pred[i], *g, mode)) {
        used[i] = true;
        ++score.matched;
        break;
      }
    }
  }
  score.predicted += pred.size();
  score.gold += ref.size();
}

void AddCounts(PrScore& total, const PrScore& doc) {
  total.matched += doc.matched;
  total.predicted += doc.predicted;
  total.gold += doc.gold;
}

nlohmann::json PrToJson(const PrScore& s) {
  return {{"matched", s.matched}, {"predicted", s.predicted}, {"gold", s.gold},
          {"precision", s.precision}, {"recall", s.recall}, {"pr", s.pr}};
}

}  // namespace

double ComputePr(double precision, double recall) {
  if (!(precision >= 0.0 && precision <= 1.0) || !(recall >= 0.0 && recall <= 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "compute_pr: precision and recall must be in [0, 1]");
  }
  if (precision + recall == 0.0) return 0.0;
  // The mean of two equal values is that value; the division below can be
  // off by one ulp.
  if (precision == recall) return precision;
  return 2.0 * (precision * recall) / (precision + recall);
}

void PrScore::Finalize() {
  precision = predicted == 0 ? 0.0 : static_cast<double>(matched) / predicted;
  recall = gold == 0 ? 0.0 : static_cast<double>(matched) / gold;
  pr = ComputePr(precision, recall);
}

SegmentScores EvaluateSegments(const std::vector<Segment>& predicted,
                               std::string_view predicted_doc_id,
                               const std::vector<Segment>& gold,
                               std::string_view gold_doc_id, MatchMode mode) {
  if (predicted_doc_id != gold_doc_id) {
    throw Error(ErrorKind::kInvalidInput, "evaluate_segments: document mismatch (" +
                                              std::string(predicted_doc_id) + " vs " +
                                              std::string(gold_doc_id) + ")");
  }
  SegmentScores scores;
  Score(scores.condition, predicted, gold, SegmentKind::kCondition, mode);
  Score(scores.recommendation, predicted, gold, SegmentKind::kRecommendation, mode);
  scores.condition.Finalize();
  scores.recommendation.Finalize();
  return scores;
}

void Accumulate(SegmentScores& total, const SegmentScores& doc) {
  AddCounts(total.condition, doc.condition);
  AddCounts(total.recommendation, doc.recommendation);
}

GoldAnnotation GoldAnnotation::FromTree(ScopeTree tree) {
  const auto violations = ValidateTree(tree);
  if (!violations.empty()) {
    throw Error(ErrorKind::kInvalidInput, "gold tree " + tree.doc_id + ": " + violations.front());
  }
  GoldAnnotation gold;
  gold.doc_id = tree.doc_id;
  gold.segments = SegmentsOf(tree);
  gold.tree = std::move(tree);
  return gold;
}

std::vector<CoupleRef> GoldCouples(const ScopeTree& gold) {
  std::vector<CoupleRef> out;
  for (std::size_t i = 0; i < gold.nodes.size(); ++i) {
    const TreeNode& c = gold.nodes[i];
    if (c.kind != SegmentKind::kCondition) continue;
    for (std::size_t j = i + 1; j < gold.nodes.size(); ++j) {
      const TreeNode& s = gold.nodes[j];
      if (s.section != c.section) continue;
      out.push_back({c.id, s.id, IsAncestor(gold, c.id, s.id)});
    }
  }
  return out;
}

std::vector<LabeledCouple> ExtractExamples(const GoldAnnotation& gold,
                                           const GuidelineDocument& doc,
                                           const RelationLexicons& lex) {
  const DocumentIndex index(doc);
  std::map<std::string, const Segment*> by_id;
  for (const auto& s : gold.segments) by_id[s.id] = &s;
  std::vector<LabeledCouple> out;
  for (const auto& ref : GoldCouples(gold.tree)) {
    const Segment* c = by_id.at(ref.condition_id);
    const Segment* s = by_id.at(ref.segment_id);
    LabeledCouple couple;
    couple.condition_id = ref.condition_id;
    couple.segment_id = ref.segment_id;
    couple.features = ExtractFeatures(*c, *s, index, lex);
    couple.label = ref.positive ? CoupleLabel::kPositive : CoupleLabel::kNegative;
    out.push_back(std::move(couple));
  }
  return out;
}

ScopeAccuracy EvaluateScope(const ScopeTree& predicted, const ScopeTree& gold) {
  std::map<std::string, SegmentKind> pred_ids;
  std::map<std::string, SegmentKind> gold_ids;
  for (const auto& n : predicted.nodes) pred_ids[n.id] = n.kind;
  for (const auto& n : gold.nodes) gold_ids[n.id] = n.kind;
  if (pred_ids != gold_ids) {
    throw Error(ErrorKind::kInvalidInput, "evaluate_scope: segment set mismatch");
  }
  ScopeAccuracy acc;
  for (const auto& ref : GoldCouples(gold)) {
    ++acc.couples;
    if (IsAncestor(predicted, ref.condition_id, ref.segment_id) == ref.positive) {
      ++acc.couples_correct;
    }
  }
  for (const auto& n : gold.nodes) {
    if (n.kind != SegmentKind::kCondition) continue;
    ++acc.conditions;
    std::set<std::string> want;
    std::set<std::string> got;
    for (const TreeNode* k : ChildrenOf(gold, n.id)) want.insert(k->id);
    for (const TreeNode* k : ChildrenOf(predicted, n.id)) got.insert(k->id);
    if (want == got) ++acc.conditions_correct;
  }
  acc.per_couple =
      acc.couples == 0 ? 1.0 : static_cast<double>(acc.couples_correct) / acc.couples;
  acc.per_condition = acc.conditions == 0
                          ? 1.0
                          : static_cast<double>(acc.conditions_correct) / acc.conditions;
  return acc;
}

double InformationGain(const std::vector<LabeledCouple>& couples,
                       std::string_view feature_name) {
  if (couples.empty()) {
    throw Error(ErrorKind::kInvalidInput, "information_gain: empty couple list");
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_value;  // positives, total
  std::size_t positives = 0;
  for (const auto& c : couples) {
    auto& bucket = by_value[FeatureValue(c.features, feature_name)];
    ++bucket.second;
    if (c.label == CoupleLabel::kPositive) {
      ++bucket.first;
      ++positives;
    }
  }
  const double n = static_cast<double>(couples.size());
  double conditional = 0.0;
  for (const auto& [value, counts] : by_value) {
    conditional += (counts.second / n) * Entropy(counts.first, counts.second);
  }
  return std::max(0.0, Entropy(positives, couples.size()) - conditional);
}

std::vector<FeatureRank> RankFeatures(const std::vector<LabeledCouple>& couples) {
  std::vector<FeatureRank> ranks;
  for (const auto& name : FeatureNames()) {
    ranks.push_back({name, CategoryOf(name), InformationGain(couples, name)});
  }
  std::stable_sort(ranks.begin(), ranks.end(), [](const FeatureRank& a, const FeatureRank& b) {
    return a.information_gain > b.information_gain;
  });
  return ranks;
}

EvaluationReport EvaluateCorpus(const std::vector<EvaluationCase>& cases,
                                const RelationLexicons& lex) {
  EvaluationReport report;
  std::vector<LabeledCouple> all_couples;
  for (const auto& c : cases) {
    Accumulate(report.exact, EvaluateSegments(*c.predicted_segments, c.doc->doc_id,
                                              c.gold->segments, c.gold->doc_id,
                                              MatchMode::kExact));
    Accumulate(report.overlap, EvaluateSegments(*c.predicted_segments, c.doc->doc_id,
                                                c.gold->segments, c.gold->doc_id,
                                                MatchMode::kOverlap));

    const DocumentIndex index(*c.doc);
    ScopeTree predicted = BuildScopeTree(index, c.gold->segments, MakeDecisionFn(index, lex));
    const ScopeAccuracy acc = EvaluateScope(predicted, c.gold->tree);
    report.scope.couples += acc.couples;
    report.scope.couples_correct += acc.couples_correct;
    report.scope.conditions += acc.conditions;
    report.scope.conditions_correct += acc.conditions_correct;

    for (auto& couple : ExtractExamples(*c.gold, *c.doc, lex)) {
      const ScopeDecision d = DecideScope(couple.features);
      RuleConfusion& conf = report.per_rule[d.fired_rule];
      const bool positive = couple.label == CoupleLabel::kPositive;
      if (d.verdict == Verdict::kInclude) {
        positive ? ++conf.true_positive : ++conf.false_positive;
      } else {
        positive ? ++conf.false_negative : ++conf.true_negative;
      }
      all_couples.push_back(std::move(couple));
    }
    ++report.documents;
  }
  report.exact.condition.Finalize();
  report.exact.recommendation.Finalize();
  report.overlap.condition.Finalize();
  report.overlap.recommendation.Finalize();
  auto& s = report.scope;
  s.per_couple = s.couples == 0 ? 1.0 : static_cast<double>(s.couples_correct) / s.couples;
  s.per_condition =
      s.conditions == 0 ? 1.0 : static_cast<double>(s.conditions_correct) / s.conditions;
  if (!all_couples.empty()) report.ranking = RankFeatures(all_couples);
  return report;
}

nlohmann::json ReportToJson(const EvaluationReport& report) {
  nlohmann::json per_rule = nlohmann::json::object();
  for (const auto& [rule, c] : report.per_rule) {
    per_rule[std::string(RuleName(rule))] = {{"true_positive", c.true_positive},
                                             {"false_positive", c.false_positive},
                                             {"true_negative", c.true_negative},
                                             {"false_negative", c.false_negative}};
  }
  nlohmann::json ranking = nlohmann::json::array();
  for (const auto& r : report.ranking) {
    ranking.push_back({{"feature", r.feature},
                       {"category", FeatureCategoryName(r.category)},
                       {"information_gain", r.information_gain}});
  }
  return {
      {"documents", report.documents},
      {"segment_pr_condition", report.segment_pr_condition()},
      {"segment_pr_recommendation", report.segment_pr_recommendation()},
      {"scope_accuracy_per_couple", report.scope_accuracy_per_couple()},
      {"scope_accuracy_per_condition", report.scope_accuracy_per_condition()},
      {"segments_exact",
       {{"condition", PrToJson(report.exact.condition)},
        {"recommendation", PrToJson(report.exact.recommendation)}}},
      {"segments_overlap",
       {{"condition", PrToJson(report.overlap.condition)},
        {"recommendation", PrToJson(report.overlap.recommendation)}}},
      {"scope",
       {{"couples", report.scope.couples},
        {"couples_correct", report.scope.couples_correct},
        {"conditions", report.scope.conditions},
        {"conditions_correct", report.scope.conditions_correct}}},
      {"per_rule", per_rule},
      {"information_gain_ranking", ranking},
  };
}

}  // namespace structure
