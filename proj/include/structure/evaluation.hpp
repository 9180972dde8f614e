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

// Evaluation: segment P&R, scope accuracy against gold trees, labelled
// couple extraction and information-gain feature ranking.

#ifndef STRUCTURE_EVALUATION_HPP_
#define STRUCTURE_EVALUATION_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "structure/doc_model.hpp"
#include "structure/features.hpp"
#include "structure/lexicon.hpp"
#include "structure/scope_engine.hpp"
#include "structure/segmenter.hpp"

namespace structure {

// Harmonic mean of precision and recall, 0 when both are 0. Throws
// Error(kInvalidInput) outside [0, 1].
double ComputePr(double precision, double recall);

enum class MatchMode { kExact, kOverlap };

struct PrScore {
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  double precision = 0.0;  // 0 when nothing was predicted
  double recall = 0.0;     // 0 when there is no gold
  double pr = 0.0;

  void Finalize();
};

struct SegmentScores {
  PrScore condition;
  PrScore recommendation;
};

// Greedy one-to-one matching by position. Exact mode requires identical
// spans; overlap mode requires overlapping spans sharing at least half of
// the longer segment's tokens. Throws Error(kInvalidInput) if doc ids differ.
SegmentScores EvaluateSegments(const std::vector<Segment>& predicted,
                               std::string_view predicted_doc_id,
                               const std::vector<Segment>& gold,
                               std::string_view gold_doc_id, MatchMode mode);

// Adds raw counts of `doc` into `total`; call Finalize() on the totals.
void Accumulate(SegmentScores& total, const SegmentScores& doc);

struct GoldAnnotation {
  std::string doc_id;
  std::vector<Segment> segments;
  ScopeTree tree;

  // Throws when the tree breaks an invariant.
  static GoldAnnotation FromTree(ScopeTree tree);
};

enum class CoupleLabel { kPositive, kNegative };

struct LabeledCouple {
  std::string condition_id;
  std::string segment_id;
  CoupleFeatures features;
  CoupleLabel label = CoupleLabel::kNegative;
};

// Positives: s in c's subtree. Negatives: s after c in the same section but
// outside c's subtree. Nothing crosses a section boundary.
std::vector<LabeledCouple> ExtractExamples(const GoldAnnotation& gold,
                                           const GuidelineDocument& doc,
                                           const RelationLexicons& lex);

struct CoupleRef {
  std::string condition_id;
  std::string segment_id;
  bool positive = false;
};

// The couple set without features; depends on the tree alone.
std::vector<CoupleRef> GoldCouples(const ScopeTree& gold);

struct ScopeAccuracy {
  double per_couple = 0.0;
  double per_condition = 0.0;
  std::size_t couples = 0;
  std::size_t couples_correct = 0;
  std::size_t conditions = 0;
  std::size_t conditions_correct = 0;
};

// Both trees must hold the same segment ids and kinds (kInvalidInput
// otherwise). Empty couple or condition sets score 1.
ScopeAccuracy EvaluateScope(const ScopeTree& predicted, const ScopeTree& gold);

// Information gain of the label given a feature, in bits.
double InformationGain(const std::vector<LabeledCouple>& couples,
                       std::string_view feature_name);

struct FeatureRank {
  std::string feature;
  FeatureCategory category;
  double information_gain;
};

// Sorted by decreasing information gain, ties by feature-list order.
std::vector<FeatureRank> RankFeatures(const std::vector<LabeledCouple>& couples);

struct RuleConfusion {
  std::size_t true_positive = 0;   // included, gold positive
  std::size_t false_positive = 0;  // included, gold negative
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;
};

struct EvaluationReport {
  SegmentScores exact;
  SegmentScores overlap;
  ScopeAccuracy scope;
  std::map<RuleId, RuleConfusion> per_rule;
  std::vector<FeatureRank> ranking;
  std::size_t documents = 0;

  double segment_pr_condition() const { return exact.condition.pr; }
  double segment_pr_recommendation() const { return exact.recommendation.pr; }
  double scope_accuracy_per_couple() const { return scope.per_couple; }
  double scope_accuracy_per_condition() const { return scope.per_condition; }
};

nlohmann::json ReportToJson(const EvaluationReport& report);

// One evaluated document: the source, the gold annotation and the
// pipeline's predicted segments.
struct EvaluationCase {
  const GuidelineDocument* doc;
  const GoldAnnotation* gold;
  const std::vector<Segment>* predicted_segments;
};

// Segment scores from predicted segments; scope accuracy and per-rule
// confusion from the scope builder run on gold segments, which isolates the
// second step from segmentation errors.
EvaluationReport EvaluateCorpus(const std::vector<EvaluationCase>& cases,
                                const RelationLexicons& lex);

}  // namespace structure

#endif  // STRUCTURE_EVALUATION_HPP_
