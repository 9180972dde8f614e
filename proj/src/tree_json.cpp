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

// Tree JSON, shared by the CLI, the review service and gold annotations:
//
//   {doc_id, title, meta: {k: v}, nodes: [{id, kind, text, parent,
//    fired_rule, confidence, span: [first, last], sentence, section,
//    placement, trigger, accepted, revised_by, explanation: [decision]}]}
//
// `parent` is null for root-attached nodes. Gold files only need id, kind,
// text, parent, span, sentence, section and placement.

#include "structure/error.hpp"
#include "structure/scope_engine.hpp"

namespace structure {

using nlohmann::json;

json DecisionToJson(const ScopeDecision& d) {
  json j = {{"condition", d.condition_id},
            {"segment", d.segment_id},
            {"verdict", VerdictName(d.verdict)},
            {"fired_rule", RuleName(d.fired_rule)},
            {"tier", TierName(TierOf(d.fired_rule))},
            {"overridden_rule", nullptr}};
  if (d.overridden_rule) j["overridden_rule"] = RuleName(*d.overridden_rule);
  return j;
}

ScopeDecision DecisionFromJson(const json& j) {
  ScopeDecision d;
  d.condition_id = j.at("condition").get<std::string>();
  d.segment_id = j.at("segment").get<std::string>();
  const std::string verdict = j.at("verdict").get<std::string>();
  if (verdict != "include" && verdict != "exclude") {
    throw SchemaError("/verdict", "expected include or exclude");
  }
  d.verdict = verdict == "include" ? Verdict::kInclude : Verdict::kExclude;
  d.fired_rule = RuleFromName(j.at("fired_rule").get<std::string>());
  if (j.contains("overridden_rule") && !j.at("overridden_rule").is_null()) {
    d.overridden_rule = RuleFromName(j.at("overridden_rule").get<std::string>());
  }
  return d;
}

json TreeToJson(const ScopeTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    json explanation = json::array();
    for (const auto& d : n.decisions) explanation.push_back(DecisionToJson(d));
    json node = {{"id", n.id},
                 {"kind", SegmentKindName(n.kind)},
                 {"text", n.text},
                 {"parent", nullptr},
                 {"fired_rule", nullptr},
                 {"confidence", nullptr},
                 {"span", {n.span.first, n.span.last}},
                 {"sentence", n.sentence},
                 {"section", n.section},
                 {"placement", PlacementName(n.placement)},
                 {"trigger", n.trigger},
                 {"accepted", n.accepted},
                 {"revised_by", n.revised_by},
                 {"explanation", explanation}};
    if (!n.parent.empty()) node["parent"] = n.parent;
    if (n.fired_rule) node["fired_rule"] = RuleName(*n.fired_rule);
    if (auto c = n.confidence()) node["confidence"] = *c;
    nodes.push_back(std::move(node));
  }
  return {{"doc_id", tree.doc_id}, {"title", tree.title}, {"meta", tree.meta},
          {"nodes", nodes}};
}

ScopeTree TreeFromJson(const json& j) {
  if (!j.is_object()) throw SchemaError("", "tree must be an object");
  ScopeTree tree;
  try {
    tree.doc_id = j.at("doc_id").get<std::string>();
    tree.title = j.value("title", std::string());
    if (j.contains("meta") && !j.at("meta").is_null()) {
      tree.meta = j.at("meta").get<std::map<std::string, std::string>>();
    }
  } catch (const json::exception& e) {
    throw SchemaError("", e.what());
  }
  if (!j.contains("nodes") || !j.at("nodes").is_array()) {
    throw SchemaError("/nodes", "expected array");
  }
  const json& nodes = j.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "/nodes/" + std::to_string(i);
    const json& n = nodes[i];
    if (!n.is_object()) throw SchemaError(path, "expected object");
    TreeNode node;
    try {
      node.id = n.at("id").get<std::string>();
      node.kind = SegmentKindFromName(n.at("kind").get<std::string>());
      node.text = n.value("text", std::string());
      if (n.contains("parent") && !n.at("parent").is_null()) {
        node.parent = n.at("parent").get<std::string>();
      }
      const json& span = n.at("span");
      if (!span.is_array() || span.size() != 2) throw SchemaError(path + "/span", "expected [first, last]");
      node.span = {span[0].get<std::size_t>(), span[1].get<std::size_t>()};
      node.sentence = n.at("sentence").get<std::size_t>();
      node.section = n.at("section").get<std::size_t>();
      node.placement = PlacementFromName(n.value(
          "placement", std::string(node.kind == SegmentKind::kCondition ? "integrated"
                                                                         : "not_applicable")));
      node.trigger = n.value("trigger", std::string());
      if (n.contains("fired_rule") && !n.at("fired_rule").is_null()) {
        node.fired_rule = RuleFromName(n.at("fired_rule").get<std::string>());
      }
      node.accepted = n.value("accepted", false);
      node.revised_by = n.value("revised_by", std::string());
      if (n.contains("explanation")) {
        for (const auto& d : n.at("explanation")) node.decisions.push_back(DecisionFromJson(d));
      }
    } catch (const json::exception& e) {
      throw SchemaError(path, e.what());
    } catch (const Error& e) {
      if (std::string_view(e.what()).starts_with("schema:")) throw;
      throw SchemaError(path, e.what());
    }
    tree.nodes.push_back(std::move(node));
  }
  SortNodes(tree);
  return tree;
}

}  // namespace structure
