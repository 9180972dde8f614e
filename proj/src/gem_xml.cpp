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

#include "structure/gem_xml.hpp"

#include <charconv>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "structure/error.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kAttr = "<xmlattr>";
constexpr std::string_view kComment = "<xmlcomment>";

std::string FormatConfidence(double c) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", c);
  return buf;
}

void EmitAttributes(std::ostringstream& out, const TreeNode& n) {
  out << " id=\"" << EscapeXml(n.id, true) << "\"";
  out << " span=\"" << n.span.first << "-" << n.span.last << "\"";
  out << " sentence=\"" << n.sentence << "\"";
  out << " section=\"" << n.section << "\"";
  if (n.kind == SegmentKind::kCondition) {
    out << " placement=\"" << PlacementName(n.placement) << "\"";
    if (!n.trigger.empty()) out << " trigger=\"" << EscapeXml(n.trigger, true) << "\"";
  }
  if (n.fired_rule) {
    out << " rule=\"" << RuleName(*n.fired_rule) << "\"";
    if (auto c = n.confidence()) out << " confidence=\"" << FormatConfidence(*c) << "\"";
  }
  if (n.accepted) out << " accepted=\"true\"";
  if (!n.revised_by.empty()) out << " revisedBy=\"" << EscapeXml(n.revised_by, true) << "\"";
}

void EmitNode(std::ostringstream& out, const ScopeTree& tree, const TreeNode& n, int depth) {
  const std::string indent(2 * static_cast<std::size_t>(depth), ' ');
  if (n.kind == SegmentKind::kRecommendation) {
    out << indent << "<action";
    EmitAttributes(out, n);
    out << ">" << EscapeXml(n.text, false) << "</action>\n";
    return;
  }
  out << indent << "<conditional";
  EmitAttributes(out, n);
  out << ">\n";
  out << indent << "  <condition>" << EscapeXml(n.text, false) << "</condition>\n";
  for (const TreeNode* child : ChildrenOf(tree, n.id)) EmitNode(out, tree, *child, depth + 1);
  out << indent << "</conditional>\n";
}

bool IsWhitespace(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string ElementPath(const std::string& parent, std::string_view name) {
  return parent + "/" + std::string(name);
}

std::size_t ParseIndex(const std::string& value, const std::string& path) {
  std::size_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw SchemaError(path, "expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

struct ParseState {
  ScopeTree tree;
  std::size_t next_ordinal = 0;
};

void ParseNodeAttributes(const pt::ptree& element, TreeNode& node, const std::string& path,
                         std::size_t ordinal) {
  const auto attrs = element.get_child_optional(std::string(kAttr));
  auto attr = [&](const char* key) -> std::optional<std::string> {
    if (!attrs) return std::nullopt;
    if (auto v = attrs->get_optional<std::string>(key)) return *v;
    return std::nullopt;
  };
  if (attrs) {
    for (const auto& [key, value] : *attrs) {
      static const std::set<std::string> kKnown = {
          "id", "span", "sentence", "section", "placement", "trigger",
          "rule", "confidence", "accepted", "revisedBy"};
      if (!kKnown.contains(key)) throw SchemaError(path + "/@" + key, "unknown attribute");
    }
  }
  const auto id = attr("id");
  if (!id || id->empty()) throw SchemaError(path + "/@id", "missing");
  node.id = *id;
  node.span = {ordinal, ordinal};
  node.sentence = ordinal;
  if (auto span = attr("span")) {
    const auto dash = span->find('-');
    if (dash == std::string::npos) throw SchemaError(path + "/@span", "expected first-last");
    node.span = {ParseIndex(span->substr(0, dash), path + "/@span"),
                 ParseIndex(span->substr(dash + 1), path + "/@span")};
  }
  if (auto v = attr("sentence")) node.sentence = ParseIndex(*v, path + "/@sentence");
  if (auto v = attr("section")) node.section = ParseIndex(*v, path + "/@section");
  if (node.kind == SegmentKind::kCondition) {
    node.placement = Placement::kDetached;
    if (auto v = attr("placement")) {
      if (*v != "detached" && *v != "integrated") {
        throw SchemaError(path + "/@placement", "expected detached or integrated");
      }
      node.placement = PlacementFromName(*v);
    }
    if (auto v = attr("trigger")) node.trigger = *v;
  } else if (attr("placement") || attr("trigger")) {
    throw SchemaError(path, "<action> cannot carry placement or trigger");
  }
  if (auto v = attr("rule")) {
    try {
      node.fired_rule = RuleFromName(*v);
    } catch (const Error&) {
      throw SchemaError(path + "/@rule", "unknown rule " + *v);
    }
  }
  if (auto v = attr("accepted")) {
    if (*v != "true" && *v != "false") throw SchemaError(path + "/@accepted", "expected boolean");
    node.accepted = *v == "true";
  }
  if (auto v = attr("revisedBy")) node.revised_by = *v;
}

void ParseChildren(const pt::ptree& container, const std::string& parent_id,
                   const std::string& path, bool expect_condition, ParseState& state);

void ParseAction(const pt::ptree& element, const std::string& parent_id,
                 const std::string& path, ParseState& state) {
  TreeNode node;
  node.kind = SegmentKind::kRecommendation;
  node.parent = parent_id;
  for (const auto& [name, child] : element) {
    if (name == kAttr || name == kComment) continue;
    throw SchemaError(ElementPath(path, name), "<action> cannot contain <" + name + ">");
  }
  ParseNodeAttributes(element, node, path, state.next_ordinal++);
  node.text = element.data();
  state.tree.nodes.push_back(std::move(node));
}

void ParseConditional(const pt::ptree& element, const std::string& parent_id,
                      const std::string& path, ParseState& state) {
  TreeNode node;
  node.kind = SegmentKind::kCondition;
  node.parent = parent_id;
  ParseNodeAttributes(element, node, path, state.next_ordinal++);
  if (!IsWhitespace(element.data())) {
    throw SchemaError(path, "unexpected text inside <conditional>");
  }
  const pt::ptree* condition = nullptr;
  for (const auto& [name, child] : element) {
    if (name == kAttr || name == kComment) continue;
    if (name != "condition") {
      throw SchemaError(ElementPath(path, name), "<condition> must come first in <conditional>");
    }
    condition = &child;
    break;
  }
  if (!condition) throw SchemaError(path, "<conditional> without <condition>");
  for (const auto& [name, child] : *condition) {
    if (name == kComment) continue;
    throw SchemaError(ElementPath(path + "/condition", name),
                      "<condition> cannot contain <" + name + ">");
  }
  node.text = condition->data();
  const std::string id = node.id;
  state.tree.nodes.push_back(std::move(node));
  ParseChildren(element, id, path, /*expect_condition=*/true, state);
}

void ParseChildren(const pt::ptree& container, const std::string& parent_id,
                   const std::string& path, bool expect_condition, ParseState& state) {
  bool seen_condition = false;
  for (const auto& [name, child] : container) {
    if (name == kAttr || name == kComment) continue;
    if (expect_condition && name == "condition" && !seen_condition) {
      seen_condition = true;
      continue;
    }
    const std::string child_path = ElementPath(path, name);
    if (name == "action") {
      ParseAction(child, parent_id, child_path, state);
    } else if (name == "conditional") {
      ParseConditional(child, parent_id, child_path, state);
    } else {
      throw SchemaError(child_path, "unknown element <" + name + ">");
    }
  }
}

}  // namespace

std::string EscapeXml(std::string_view raw, bool attribute) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += attribute ? "&quot;" : "\""; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string EmitXml(const ScopeTree& tree) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<guideline>\n";
  out << "  <identity>\n";
  out << "    <documentId>" << EscapeXml(tree.doc_id, false) << "</documentId>\n";
  out << "    <title>" << EscapeXml(tree.title, false) << "</title>\n";
  for (const auto& [key, value] : tree.meta) {
    out << "    <property name=\"" << EscapeXml(key, true) << "\">"
        << EscapeXml(value, false) << "</property>\n";
  }
  out << "  </identity>\n";
  const auto top = ChildrenOf(tree, "");
  if (top.empty()) {
    out << "  <knowledgeComponent/>\n";
  } else {
    out << "  <knowledgeComponent>\n";
    for (const TreeNode* n : top) EmitNode(out, tree, *n, 2);
    out << "  </knowledgeComponent>\n";
  }
  out << "</guideline>\n";
  return out.str();
}

ScopeTree ParseXml(std::string_view xml) {
  if (!text::IsValidUtf8(xml)) throw Error(ErrorKind::kInvalidInput, "encoding");
  pt::ptree root;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, root);
  } catch (const pt::xml_parser_error& e) {
    throw SchemaError("", std::string("malformed XML: ") + e.what());
  }
  const pt::ptree* guideline = nullptr;
  for (const auto& [name, child] : root) {
    if (name == kComment) continue;
    if (name != "guideline" || guideline) {
      throw SchemaError("/" + name, "unknown element <" + name + ">");
    }
    guideline = &child;
  }
  if (!guideline) throw SchemaError("/guideline", "missing root element");

  ParseState state;
  bool seen_component = false;
  for (const auto& [name, child] : *guideline) {
    const std::string path = ElementPath("/guideline", name);
    if (name == kComment || name == kAttr) continue;
    if (name == "identity") {
      for (const auto& [field, value] : child) {
        const std::string fpath = ElementPath(path, field);
        if (field == kComment) continue;
        if (field == "documentId") {
          state.tree.doc_id = value.data();
        } else if (field == "title") {
          state.tree.title = value.data();
        } else if (field == "property") {
          const auto key = value.get_optional<std::string>("<xmlattr>.name");
          if (!key) throw SchemaError(fpath + "/@name", "missing");
          state.tree.meta[*key] = value.data();
        } else {
          throw SchemaError(fpath, "unknown element <" + field + ">");
        }
      }
    } else if (name == "knowledgeComponent") {
      if (seen_component) throw SchemaError(path, "duplicate <knowledgeComponent>");
      seen_component = true;
      if (!IsWhitespace(child.data())) {
        throw SchemaError(path, "unexpected text inside <knowledgeComponent>");
      }
      ParseChildren(child, "", path, /*expect_condition=*/false, state);
    } else {
      throw SchemaError(path, "unknown element <" + name + ">");
    }
  }
  if (!seen_component) throw SchemaError("/guideline/knowledgeComponent", "missing");
  SortNodes(state.tree);
  return std::move(state.tree);
}

}  // namespace structure
