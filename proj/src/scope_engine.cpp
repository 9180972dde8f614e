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

#include "structure/scope_engine.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "structure/error.hpp"

namespace structure {
namespace {

// Norm tier of the cascade, also used to report what an exception overrode.
ScopeDecision DecideByNorms(const CoupleFeatures& f) {
  ScopeDecision d;
  if (!f.is_detached) {
    d.fired_rule = f.same_sentence ? RuleId::kNormIntegratedSameSentence
                                   : RuleId::kNormIntegratedOtherSentence;
    d.verdict = f.same_sentence ? Verdict::kInclude : Verdict::kExclude;
  } else if (f.same_visual_position) {
    d.fired_rule = RuleId::kNormDetachedSamePosition;
    d.verdict = Verdict::kExclude;
  } else if (f.same_paragraph || f.s_in_list_introduced_by_c) {
    d.fired_rule = RuleId::kNormDetachedSameParagraph;
    d.verdict = Verdict::kInclude;
  } else {
    d.fired_rule = RuleId::kDefaultExclude;
    d.verdict = Verdict::kExclude;
  }
  return d;
}

auto NodeKey(const TreeNode& n) {
  return std::make_tuple(n.sentence, n.kind == SegmentKind::kCondition ? 0 : 1,
                         n.span.first, n.span.last);
}

}  // namespace

std::string_view RuleName(RuleId rule) {
  switch (rule) {
    case RuleId::kNormIntegratedSameSentence: return "NORM_INTEGRATED_SAME_SENTENCE";
    case RuleId::kNormIntegratedOtherSentence: return "NORM_INTEGRATED_OTHER_SENTENCE";
    case RuleId::kNormDetachedSamePosition: return "NORM_DETACHED_SAME_POSITION";
    case RuleId::kNormDetachedSameParagraph: return "NORM_DETACHED_SAME_PARAGRAPH";
    case RuleId::kExcCoreferenceInclude: return "EXC_COREFERENCE_INCLUDE";
    case RuleId::kExcConnectorExclude: return "EXC_CONNECTOR_EXCLUDE";
    case RuleId::kDefaultExclude: return "DEFAULT_EXCLUDE";
  }
  return "DEFAULT_EXCLUDE";
}

RuleId RuleFromName(std::string_view name) {
  for (RuleId rule : kAllRules) {
    if (RuleName(rule) == name) return rule;
  }
  throw Error(ErrorKind::kInvalidInput, "unknown rule: " + std::string(name));
}

RuleTier TierOf(RuleId rule) {
  switch (rule) {
    case RuleId::kExcCoreferenceInclude:
    case RuleId::kExcConnectorExclude:
      return RuleTier::kException;
    case RuleId::kDefaultExclude:
      return RuleTier::kFallback;
    default:
      return RuleTier::kNorm;
  }
}

std::string_view TierName(RuleTier tier) {
  switch (tier) {
    case RuleTier::kNorm: return "norm";
    case RuleTier::kException: return "exception";
    case RuleTier::kFallback: return "fallback";
  }
  return "fallback";
}

std::optional<double> RuleConfidence(RuleId rule) {
  switch (rule) {
    case RuleId::kNormIntegratedSameSentence:
    case RuleId::kNormIntegratedOtherSentence:
      return 0.80;
    case RuleId::kNormDetachedSamePosition:
    case RuleId::kNormDetachedSameParagraph:
      return 0.70;
    default:
      return std::nullopt;
  }
}

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kInclude ? "include" : "exclude";
}

ScopeDecision DecideScope(const CoupleFeatures& f) {
  const ScopeDecision norm = DecideByNorms(f);
  ScopeDecision d;
  if (f.demonstrative_coreference) {
    d.fired_rule = RuleId::kExcCoreferenceInclude;
    d.verdict = Verdict::kInclude;
    d.overridden_rule = norm.fired_rule;
  } else if (f.begins_with_coordination_marker) {
    d.fired_rule = RuleId::kExcConnectorExclude;
    d.verdict = Verdict::kExclude;
    d.overridden_rule = norm.fired_rule;
  } else {
    d = norm;
  }
  return d;
}

DecisionFn MakeDecisionFn(const DocumentIndex& index, const RelationLexicons& lex) {
  return [&index, &lex](const Segment& c, const Segment& s) {
    ScopeDecision d = DecideScope(ExtractFeatures(c, s, index, lex));
    d.condition_id = c.id;
    d.segment_id = s.id;
    return d;
  };
}

const TreeNode* FindNode(const ScopeTree& tree, std::string_view id) {
  for (const auto& n : tree.nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<const TreeNode*> ChildrenOf(const ScopeTree& tree, std::string_view parent_id) {
  std::vector<const TreeNode*> out;
  for (const auto& n : tree.nodes) {
    if (n.parent == parent_id) out.push_back(&n);
  }
  return out;
}

bool NodePrecedes(const TreeNode& a, const TreeNode& b) { return NodeKey(a) < NodeKey(b); }

void SortNodes(ScopeTree& tree) {
  std::stable_sort(tree.nodes.begin(), tree.nodes.end(), NodePrecedes);
}

bool IsAncestor(const ScopeTree& tree, std::string_view ancestor, std::string_view id) {
  const TreeNode* node = FindNode(tree, id);
  for (std::size_t guard = 0; node && !node->parent.empty() && guard <= tree.nodes.size();
       ++guard) {
    if (node->parent == ancestor) return true;
    node = FindNode(tree, node->parent);
  }
  return false;
}

std::vector<std::string> ValidateTree(const ScopeTree& tree) {
  std::vector<std::string> violations;
  std::set<std::string> ids;
  for (const auto& n : tree.nodes) {
    if (n.id.empty()) violations.push_back("node with empty id");
    if (!ids.insert(n.id).second) violations.push_back("duplicate id " + n.id);
    if ((n.kind == SegmentKind::kCondition) == (n.placement == Placement::kNotApplicable)) {
      violations.push_back("placement does not match kind for " + n.id);
    }
  }
  // Parent lookups below assume unique ids.
  bool parents_ok = ids.size() == tree.nodes.size();
  for (const auto& n : tree.nodes) {
    if (n.parent.empty()) continue;
    const TreeNode* p = FindNode(tree, n.parent);
    if (!p) {
      violations.push_back("unknown parent " + n.parent + " of " + n.id);
      parents_ok = false;
      continue;
    }
    if (p->kind != SegmentKind::kCondition) {
      violations.push_back("recommendation " + p->id + " has child " + n.id);
    }
    if (p->section != n.section) {
      violations.push_back("scope of " + p->id + " crosses a section boundary to " + n.id);
    }
  }
  if (!parents_ok) return violations;

  for (const auto& n : tree.nodes) {
    // A chain longer than the node count must revisit a node.
    const TreeNode* cur = &n;
    std::size_t steps = 0;
    while (!cur->parent.empty() && steps <= tree.nodes.size()) {
      cur = FindNode(tree, cur->parent);
      ++steps;
    }
    if (steps > tree.nodes.size()) {
      violations.push_back("cycle through " + n.id);
      return violations;
    }
  }

  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    if (NodePrecedes(tree.nodes[i], tree.nodes[i - 1])) {
      violations.push_back("nodes out of document order at " + tree.nodes[i].id);
    }
  }
  // Pre-order traversal must visit nodes in document order.
  std::vector<const TreeNode*> preorder;
  std::vector<const TreeNode*> stack;
  auto push_children = [&](std::string_view id) {
    auto kids = ChildrenOf(tree, id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  };
  push_children("");
  while (!stack.empty()) {
    const TreeNode* n = stack.back();
    stack.pop_back();
    preorder.push_back(n);
    push_children(n->id);
  }
  for (std::size_t i = 0; i < preorder.size(); ++i) {
    if (preorder[i] != &tree.nodes[i]) {
      violations.push_back("traversal leaves document order at " + preorder[i]->id);
      break;
    }
  }
  return violations;
}

ScopeTree BuildScopeTree(const DocumentIndex& index, const std::vector<Segment>& segments,
                         const DecisionFn& decide) {
  CheckSegmentation(segments, index);
  std::vector<Segment> ordered = segments;
  SortSegments(ordered, index);

  ScopeTree tree;
  tree.doc_id = index.document().doc_id;
  tree.title = index.document().title;

  std::vector<const Segment*> open;
  for (const Segment& s : ordered) {
    TreeNode node;
    node.id = s.id;
    node.kind = s.kind;
    node.text = s.text;
    node.span = s.span;
    node.sentence = index.sentence_of(s.span.first);
    node.section = index.section_of(s.span.first);
    node.placement = s.placement;
    node.trigger = s.trigger;

    while (!open.empty()) {
      const Segment& c = *open.back();
      if (index.section_of(c.span.first) != node.section) {
        open.pop_back();
        continue;
      }
      ScopeDecision d = decide(c, s);
      const bool include = d.verdict == Verdict::kInclude;
      node.decisions.push_back(std::move(d));
      if (include) {
        node.parent = c.id;
        break;
      }
      open.pop_back();
    }
    if (!node.decisions.empty()) node.fired_rule = node.decisions.back().fired_rule;
    tree.nodes.push_back(std::move(node));
    if (s.kind == SegmentKind::kCondition) open.push_back(&s);
  }
  return tree;
}

ScopeTree BuildScopeTree(const GuidelineDocument& doc, const std::vector<Segment>& segments,
                         const DecisionFn& decide) {
  const DocumentIndex index(doc);
  return BuildScopeTree(index, segments, decide);
}

std::vector<ScopeDecision> Explain(const ScopeTree& tree, std::string_view segment_id) {
  const TreeNode* node = FindNode(tree, segment_id);
  if (!node) {
    throw Error(ErrorKind::kNotFound, "unknown segment id: " + std::string(segment_id));
  }
  std::vector<ScopeDecision> out = node->decisions;
  for (std::size_t guard = 0; !node->parent.empty() && guard < tree.nodes.size(); ++guard) {
    const TreeNode* parent = FindNode(tree, node->parent);
    if (!parent) break;
    if (!parent->parent.empty()) {
      for (const auto& d : parent->decisions) {
        if (d.condition_id == parent->parent && d.verdict == Verdict::kInclude) {
          out.push_back(d);
        }
      }
    }
    node = parent;
  }
  return out;
}

bool StructurallyEqual(const ScopeTree& a, const ScopeTree& b) {
  if (a.doc_id != b.doc_id || a.title != b.title || a.meta != b.meta ||
      a.nodes.size() != b.nodes.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    const TreeNode& x = a.nodes[i];
    const TreeNode& y = b.nodes[i];
    if (x.id != y.id || x.kind != y.kind || x.text != y.text || x.parent != y.parent ||
        !(x.span == y.span) || x.sentence != y.sentence || x.section != y.section ||
        x.placement != y.placement || x.trigger != y.trigger ||
        x.fired_rule != y.fired_rule || x.accepted != y.accepted ||
        x.revised_by != y.revised_by) {
      return false;
    }
  }
  return true;
}

std::vector<Segment> SegmentsOf(const ScopeTree& tree) {
  std::vector<Segment> out;
  for (const auto& n : tree.nodes) {
    Segment s;
    s.id = n.id;
    s.kind = n.kind;
    s.span = n.span;
    s.text = n.text;
    s.trigger = n.trigger;
    s.placement = n.placement;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace structure
