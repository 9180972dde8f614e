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

#include <algorithm>

#include "structure/error.hpp"
#include "structure/review_service.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

std::size_t IndexOf(const ScopeTree& tree, const std::string& id) {
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].id == id) return i;
  }
  throw Error(ErrorKind::kNotFound, "unknown segment: " + id);
}

void Reject(const std::string& why) { throw Error(ErrorKind::kRejected, why); }

void Revalidate(const ScopeTree& tree) {
  const auto violations = ValidateTree(tree);
  if (!violations.empty()) Reject(violations.front());
}

void Reparent(ScopeTree& tree, const Override& o) {
  TreeNode& node = tree.nodes[IndexOf(tree, o.target)];
  if (!o.new_parent.empty()) {
    const TreeNode& parent = tree.nodes[IndexOf(tree, o.new_parent)];
    if (parent.kind != SegmentKind::kCondition) {
      Reject("new parent " + parent.id + " is not a condition");
    }
    if (parent.id == node.id || IsAncestor(tree, node.id, parent.id)) {
      Reject("reparenting " + node.id + " under " + parent.id + " creates a cycle");
    }
  }
  node.parent = o.new_parent;
  // The machine rule no longer explains this attachment.
  node.fired_rule.reset();
  node.revised_by = o.author;
}

void ChangeKind(ScopeTree& tree, const Override& o) {
  TreeNode& node = tree.nodes[IndexOf(tree, o.target)];
  if (node.kind == SegmentKind::kCondition) {
    if (!ChildrenOf(tree, node.id).empty()) {
      Reject("condition " + node.id + " still has children");
    }
    node.kind = SegmentKind::kRecommendation;
    node.placement = Placement::kNotApplicable;
    node.trigger.clear();
  } else {
    if (o.placement == Placement::kNotApplicable) {
      throw Error(ErrorKind::kInvalidInput, "a condition needs a placement");
    }
    node.kind = SegmentKind::kCondition;
    node.placement = o.placement;
  }
  node.revised_by = o.author;
  SortNodes(tree);
}

void Merge(ScopeTree& tree, const Override& o) {
  if (o.other.empty()) throw Error(ErrorKind::kInvalidInput, "merge needs 'other'");
  const std::size_t a = IndexOf(tree, o.target);
  const std::size_t b = IndexOf(tree, o.other);
  if (a == b) throw Error(ErrorKind::kInvalidInput, "cannot merge a segment with itself");
  const TreeNode& first = tree.nodes[a];
  const TreeNode& second = tree.nodes[b];
  if (first.kind != second.kind) Reject("merged segments differ in kind");
  if (first.parent != second.parent) Reject("merged segments have different parents");
  const auto siblings = ChildrenOf(tree, first.parent);
  auto pos = [&](const std::string& id) {
    return std::find_if(siblings.begin(), siblings.end(),
                        [&](const TreeNode* n) { return n->id == id; }) -
           siblings.begin();
  };
  if (pos(second.id) != pos(first.id) + 1) {
    Reject(second.id + " is not the next sibling of " + first.id);
  }
  TreeNode merged = first;
  merged.span.first = std::min(first.span.first, second.span.first);
  merged.span.last = std::max(first.span.last, second.span.last);
  merged.sentence = std::min(first.sentence, second.sentence);
  merged.text = first.text + " " + second.text;
  merged.revised_by = o.author;
  const std::string removed = second.id;
  tree.nodes[a] = std::move(merged);
  tree.nodes.erase(tree.nodes.begin() + static_cast<std::ptrdiff_t>(b));
  for (auto& n : tree.nodes) {
    if (n.parent == removed) n.parent = o.target;
  }
  SortNodes(tree);
}

void Split(ScopeTree& tree, const Override& o) {
  const std::size_t i = IndexOf(tree, o.target);
  const TreeNode& node = tree.nodes[i];
  const std::string& t = node.text;
  if (o.at == 0 || o.at >= t.size() ||
      (static_cast<unsigned char>(t[o.at]) & 0xC0) == 0x80) {
    throw Error(ErrorKind::kInvalidInput, "split offset is not an inner character boundary");
  }
  const std::string head(text::Trim(std::string_view(t).substr(0, o.at)));
  const std::string tail(text::Trim(std::string_view(t).substr(o.at)));
  if (head.empty() || tail.empty()) {
    throw Error(ErrorKind::kInvalidInput, "split leaves an empty part");
  }
  std::string new_id;
  for (int n = 1;; ++n) {
    new_id = node.id + "." + std::to_string(n);
    if (!FindNode(tree, new_id)) break;
  }
  TreeNode second = node;
  second.id = new_id;
  second.text = tail;
  second.decisions.clear();
  second.fired_rule.reset();
  second.accepted = false;
  second.revised_by = o.author;
  if (node.kind == SegmentKind::kCondition) {
    // The second part narrows the first: it becomes the only child and
    // inherits the existing scope.
    for (auto& n : tree.nodes) {
      if (n.parent == node.id) n.parent = new_id;
    }
    second.parent = node.id;
  }
  tree.nodes[i].text = head;
  tree.nodes[i].revised_by = o.author;
  tree.nodes.insert(tree.nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(second));
}

void Accept(ScopeTree& tree, const Override& o) {
  TreeNode& node = tree.nodes[IndexOf(tree, o.target)];
  node.accepted = true;
  node.revised_by = o.author;
}

}  // namespace

std::string_view OverrideKindName(OverrideKind kind) {
  switch (kind) {
    case OverrideKind::kReparent: return "reparent";
    case OverrideKind::kChangeKind: return "change_kind";
    case OverrideKind::kMergeSegments: return "merge_segments";
    case OverrideKind::kSplitSegment: return "split_segment";
    case OverrideKind::kAccept: return "accept";
  }
  return "?";
}

OverrideKind OverrideKindFromName(std::string_view name) {
  for (auto k : {OverrideKind::kReparent, OverrideKind::kChangeKind,
                 OverrideKind::kMergeSegments, OverrideKind::kSplitSegment,
                 OverrideKind::kAccept}) {
    if (OverrideKindName(k) == name) return k;
  }
  throw Error(ErrorKind::kInvalidInput, "unknown override kind: " + std::string(name));
}

nlohmann::json OverrideToJson(const Override& o) {
  nlohmann::json j = {{"kind", OverrideKindName(o.kind)},
                      {"target", o.target},
                      {"author", o.author},
                      {"timestamp", o.timestamp}};
  switch (o.kind) {
    case OverrideKind::kReparent:
      j["new_parent"] = o.new_parent.empty() ? nlohmann::json() : nlohmann::json(o.new_parent);
      break;
    case OverrideKind::kChangeKind:
      j["placement"] = PlacementName(o.placement);
      break;
    case OverrideKind::kMergeSegments:
      j["other"] = o.other;
      break;
    case OverrideKind::kSplitSegment:
      j["at"] = o.at;
      break;
    case OverrideKind::kAccept:
      break;
  }
  return j;
}

Override OverrideFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("/", "override must be an object");
  auto str = [&](const char* key, bool required) -> std::string {
    if (!j.contains(key) || j[key].is_null()) {
      if (required) throw SchemaError(std::string("/") + key, "missing");
      return "";
    }
    if (!j[key].is_string()) throw SchemaError(std::string("/") + key, "must be a string");
    return j[key].get<std::string>();
  };
  Override o;
  o.kind = OverrideKindFromName(str("kind", true));
  o.target = str("target", true);
  o.author = str("author", false);
  o.timestamp = str("timestamp", false);
  switch (o.kind) {
    case OverrideKind::kReparent:
      if (!j.contains("new_parent")) throw SchemaError("/new_parent", "missing");
      o.new_parent = str("new_parent", false);
      break;
    case OverrideKind::kChangeKind:
      if (j.contains("placement")) o.placement = PlacementFromName(str("placement", true));
      break;
    case OverrideKind::kMergeSegments:
      o.other = str("other", true);
      break;
    case OverrideKind::kSplitSegment:
      if (!j.contains("at") || !j["at"].is_number_unsigned()) {
        throw SchemaError("/at", "must be a non-negative integer");
      }
      o.at = j["at"].get<std::size_t>();
      break;
    case OverrideKind::kAccept:
      break;
  }
  return o;
}

ScopeTree ApplyOverride(const ScopeTree& tree, const Override& o) {
  ScopeTree out = tree;
  switch (o.kind) {
    case OverrideKind::kReparent: Reparent(out, o); break;
    case OverrideKind::kChangeKind: ChangeKind(out, o); break;
    case OverrideKind::kMergeSegments: Merge(out, o); break;
    case OverrideKind::kSplitSegment: Split(out, o); break;
    case OverrideKind::kAccept: Accept(out, o); break;
  }
  Revalidate(out);
  return out;
}

ScopeTree ReplayOverrides(const ScopeTree& initial, const std::vector<Override>& log) {
  ScopeTree tree = initial;
  for (const auto& o : log) tree = ApplyOverride(tree, o);
  return tree;
}

}  // namespace structure
