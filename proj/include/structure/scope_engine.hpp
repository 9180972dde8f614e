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

// Step two of the pipeline: per-couple scope decisions from a norm/exception
// rule cascade, and the document-level scope tree built from them.
//
// The cascade, highest priority first:
//
//   EXC_COREFERENCE_INCLUDE         s carries a demonstrative anaphor
//   EXC_CONNECTOR_EXCLUDE           s opens with a coordination connector
//   NORM_INTEGRATED_SAME_SENTENCE   integrated c, s in c's sentence
//   NORM_INTEGRATED_OTHER_SENTENCE  integrated c, s elsewhere
//   NORM_DETACHED_SAME_POSITION     detached c, s at c's visual position
//   NORM_DETACHED_SAME_PARAGRAPH    detached c, s in c's paragraph or list
//   DEFAULT_EXCLUDE
//
// A scope is the contiguous run of segments after c that c includes; the
// first exclusion closes it for good, and section boundaries close it too.

#ifndef STRUCTURE_SCOPE_ENGINE_HPP_
#define STRUCTURE_SCOPE_ENGINE_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "structure/doc_model.hpp"
#include "structure/features.hpp"
#include "structure/lexicon.hpp"
#include "structure/segmenter.hpp"

namespace structure {

enum class RuleId {
  kNormIntegratedSameSentence,
  kNormIntegratedOtherSentence,
  kNormDetachedSamePosition,
  kNormDetachedSameParagraph,
  kExcCoreferenceInclude,
  kExcConnectorExclude,
  kDefaultExclude,
};

enum class RuleTier { kNorm, kException, kFallback };

inline constexpr RuleId kAllRules[] = {
    RuleId::kNormIntegratedSameSentence, RuleId::kNormIntegratedOtherSentence,
    RuleId::kNormDetachedSamePosition,   RuleId::kNormDetachedSameParagraph,
    RuleId::kExcCoreferenceInclude,      RuleId::kExcConnectorExclude,
    RuleId::kDefaultExclude,
};

std::string_view RuleName(RuleId rule);
RuleId RuleFromName(std::string_view name);
RuleTier TierOf(RuleId rule);
std::string_view TierName(RuleTier tier);

// Advisory confidence shown to reviewers: how often the norm held on the
// training material (0.80 sentence-bounded integrated conditions, 0.70
// downward-projecting detached ones). Never changes a verdict. Empty for
// exception and fallback rules.
std::optional<double> RuleConfidence(RuleId rule);

enum class Verdict { kInclude, kExclude };

std::string_view VerdictName(Verdict v);

struct ScopeDecision {
  std::string condition_id;
  std::string segment_id;
  Verdict verdict = Verdict::kExclude;
  RuleId fired_rule = RuleId::kDefaultExclude;
  // Set iff fired_rule is an exception: the rule the cascade would have
  // applied without the exception features.
  std::optional<RuleId> overridden_rule;

  bool operator==(const ScopeDecision&) const = default;
};

ScopeDecision DecideScope(const CoupleFeatures& f);

using DecisionFn = std::function<ScopeDecision(const Segment& c, const Segment& s)>;

// decide_scope . extract_features, with the couple ids filled in.
DecisionFn MakeDecisionFn(const DocumentIndex& index, const RelationLexicons& lex);

struct TreeNode {
  std::string id;
  SegmentKind kind = SegmentKind::kRecommendation;
  std::string text;
  std::string parent;  // empty when attached to the document root
  PropositionSpan span;
  std::size_t sentence = 0;  // global ordinal of the span's first sentence
  std::size_t section = 0;
  Placement placement = Placement::kNotApplicable;
  std::string trigger;
  std::optional<RuleId> fired_rule;
  // Decisions taken while placing this node: exclusions that closed open
  // scopes, then the inclusion that attached it (if any).
  std::vector<ScopeDecision> decisions;
  bool accepted = false;
  std::string revised_by;  // author of the last expert edit touching the node

  std::optional<double> confidence() const {
    return fired_rule ? RuleConfidence(*fired_rule) : std::nullopt;
  }
};

// Nodes are stored in document order; the root is implicit.
struct ScopeTree {
  std::string doc_id;
  std::string title;
  std::map<std::string, std::string> meta;
  std::vector<TreeNode> nodes;
};

const TreeNode* FindNode(const ScopeTree& tree, std::string_view id);
// Children of `parent_id` ("" for the root), in document order.
std::vector<const TreeNode*> ChildrenOf(const ScopeTree& tree, std::string_view parent_id);
bool NodePrecedes(const TreeNode& a, const TreeNode& b);
void SortNodes(ScopeTree& tree);
// True when `ancestor` lies on the parent chain of `id`.
bool IsAncestor(const ScopeTree& tree, std::string_view ancestor, std::string_view id);

// Returns one message per violated invariant: unique ids, known parents,
// acyclic, only conditions branch, document-order pre-order traversal, no
// parent/child pair across a section boundary. Empty means valid.
std::vector<std::string> ValidateTree(const ScopeTree& tree);

// Throws Error(kInconsistent) "inconsistent segmentation" on overlap.
ScopeTree BuildScopeTree(const DocumentIndex& index, const std::vector<Segment>& segments,
                         const DecisionFn& decide);
ScopeTree BuildScopeTree(const GuidelineDocument& doc, const std::vector<Segment>& segments,
                         const DecisionFn& decide);

// Decisions that determined the node's parent chain. Throws kNotFound.
std::vector<ScopeDecision> Explain(const ScopeTree& tree, std::string_view segment_id);

// Node fields compared, explanations ignored.
bool StructurallyEqual(const ScopeTree& a, const ScopeTree& b);

std::vector<Segment> SegmentsOf(const ScopeTree& tree);

nlohmann::json DecisionToJson(const ScopeDecision& d);
ScopeDecision DecisionFromJson(const nlohmann::json& j);
nlohmann::json TreeToJson(const ScopeTree& tree);
// Throws a schema Error; does not check tree invariants.
ScopeTree TreeFromJson(const nlohmann::json& j);

}  // namespace structure

#endif  // STRUCTURE_SCOPE_ENGINE_HPP_
