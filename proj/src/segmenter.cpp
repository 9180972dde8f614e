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

#include "structure/segmenter.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "structure/error.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

bool IsClosingPunct(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';' || c == ':' || c == ' ' ||
         c == '\t' || c == '\n';
}

// Byte length of `s` once trailing whitespace and sentence punctuation are
// dropped.
std::size_t ContentEnd(std::string_view s) {
  std::size_t end = s.size();
  while (end > 0 && IsClosingPunct(s[end - 1])) --end;
  return end;
}

std::size_t TrimRightEnd(std::string_view s, std::size_t end) {
  while (end > 0 && (s[end - 1] == ' ' || s[end - 1] == '\t')) --end;
  return end;
}

// Removes [begin, end) from a proposition and tidies the commas and spaces
// left behind: "X, si Y, Z." -> "X Z.", "X si Y." -> "X.".
std::string RemoveSpan(std::string_view host, std::size_t begin, std::size_t end) {
  std::string prefix = text::Trim(host.substr(0, begin));
  std::string suffix = text::Trim(host.substr(end));
  const bool suffix_comma =
      !suffix.empty() && (suffix.front() == ',' || suffix.front() == ':');
  if (suffix_comma) suffix = text::Trim(std::string_view(suffix).substr(1));
  if (!prefix.empty() && prefix.back() == ',' && (suffix_comma || suffix.empty() ||
                                                  IsClosingPunct(suffix.front()))) {
    prefix = text::Trim(std::string_view(prefix).substr(0, prefix.size() - 1));
  }
  if (prefix.empty()) return suffix;
  if (suffix.empty()) return prefix;
  if (IsClosingPunct(suffix.front())) return prefix + suffix;
  return prefix + " " + suffix;
}

// Blocks governed by a preceding sentence that ends with ':': list items
// deeper than the introducer, up to the next block at or above its depth.
std::vector<bool> InheritedBlocks(const DocumentIndex& index) {
  std::vector<bool> inherited(index.block_count(), false);
  std::vector<int> introducers;
  std::size_t current_section = 0;
  for (std::size_t b = 0; b < index.block_count(); ++b) {
    const Block& block = index.block(b);
    if (index.block_section(b) != current_section) {
      introducers.clear();
      current_section = index.block_section(b);
    }
    while (!introducers.empty() && introducers.back() >= block.list_depth) {
      introducers.pop_back();
    }
    inherited[b] = !introducers.empty() && block.kind == BlockKind::kListItem;
    const std::string last = text::Trim(block.sentences.back().raw_text);
    if (!last.empty() && last.back() == ':') introducers.push_back(block.list_depth);
  }
  return inherited;
}

struct ConditionHit {
  std::size_t unit;
  std::size_t begin;
  std::size_t end;
  std::string trigger;
};

std::optional<ConditionHit> FindCondition(const DocumentIndex& index, std::size_t first,
                                          std::size_t last, const TriggerLexicon& lex) {
  for (std::size_t u = first; u <= last; ++u) {
    const Proposition& prop = index.proposition(u);
    const auto tokens = text::Tokenize(prop.text);
    const auto match = FindConditionMarker(tokens, lex, prop.starts_sentence);
    if (!match) continue;
    const std::size_t begin = tokens[match->token].begin;
    const std::size_t marker_end = tokens[match->token + match->length - 1].end;
    const std::size_t comma = prop.text.find_first_of(",:", marker_end);
    std::size_t end = comma == std::string::npos ? ContentEnd(prop.text)
                                                 : TrimRightEnd(prop.text, comma);
    if (end < marker_end) end = marker_end;
    return ConditionHit{u, begin, end, match->marker->pattern};
  }
  return std::nullopt;
}

}  // namespace

std::string_view SegmentKindName(SegmentKind kind) {
  return kind == SegmentKind::kCondition ? "condition" : "recommendation";
}

SegmentKind SegmentKindFromName(std::string_view name) {
  if (name == "condition") return SegmentKind::kCondition;
  if (name == "recommendation") return SegmentKind::kRecommendation;
  throw Error(ErrorKind::kInvalidInput, "unknown segment kind: " + std::string(name));
}

std::string_view PlacementName(Placement placement) {
  switch (placement) {
    case Placement::kDetached: return "detached";
    case Placement::kIntegrated: return "integrated";
    case Placement::kNotApplicable: return "not_applicable";
  }
  return "not_applicable";
}

Placement PlacementFromName(std::string_view name) {
  if (name == "detached") return Placement::kDetached;
  if (name == "integrated") return Placement::kIntegrated;
  if (name == "not_applicable") return Placement::kNotApplicable;
  throw Error(ErrorKind::kInvalidInput, "unknown placement: " + std::string(name));
}

Placement ClassifyPlacement(const Segment& c, const DocumentIndex& index) {
  if (c.kind != SegmentKind::kCondition) {
    throw Error(ErrorKind::kContract, "classify_placement called on a recommendation");
  }
  if (c.span.last >= index.size()) {
    throw Error(ErrorKind::kContract, "segment span out of range");
  }
  const Proposition& first = index.proposition(c.span.first);
  if (!first.starts_sentence || c.begin != 0) return Placement::kIntegrated;
  const std::string& last_text = index.proposition(c.span.last).text;
  // Fronted adjunct still inside its proposition: "Si X, Y ..." or
  // "En cas de X : Y ...".
  std::size_t after = c.end;
  while (after < last_text.size() && last_text[after] == ' ') ++after;
  if (after < last_text.size() && (last_text[after] == ',' || last_text[after] == ':')) {
    return Placement::kDetached;
  }
  // Otherwise the span must run to the end of its last proposition: either an
  // adjunct split off at its comma, or the whole sentence ("En cas de X :").
  if (c.end >= ContentEnd(last_text)) return Placement::kDetached;
  return Placement::kIntegrated;
}

Placement ClassifyPlacement(const Segment& c, const GuidelineDocument& doc) {
  return ClassifyPlacement(c, DocumentIndex(doc));
}

bool SegmentPrecedes(const Segment& a, const Segment& b, const DocumentIndex& index) {
  auto key = [&index](const Segment& s) {
    return std::make_tuple(index.sentence_of(s.span.first),
                           s.kind == SegmentKind::kCondition ? 0 : 1, s.span.first,
                           s.begin, s.span.last);
  };
  return key(a) < key(b);
}

void SortSegments(std::vector<Segment>& segments, const DocumentIndex& index) {
  std::stable_sort(segments.begin(), segments.end(),
                   [&index](const Segment& a, const Segment& b) {
                     return SegmentPrecedes(a, b, index);
                   });
}

void CheckSegmentation(const std::vector<Segment>& segments, const DocumentIndex& index) {
  for (const auto& s : segments) {
    if (s.span.first > s.span.last || s.span.last >= index.size()) {
      throw Error(ErrorKind::kInconsistent,
                  "inconsistent segmentation: span of " + s.id + " out of range");
    }
    if ((s.kind == SegmentKind::kCondition) == (s.placement == Placement::kNotApplicable)) {
      throw Error(ErrorKind::kInconsistent,
                  "inconsistent segmentation: placement of " + s.id);
    }
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      if (segments[i].id == segments[j].id) {
        throw Error(ErrorKind::kInconsistent,
                    "inconsistent segmentation: duplicate id " + segments[i].id);
      }
      if (segments[i].kind == segments[j].kind &&
          segments[i].span.Overlaps(segments[j].span)) {
        throw Error(ErrorKind::kInconsistent, "inconsistent segmentation: " +
                                                  segments[i].id + " overlaps " +
                                                  segments[j].id);
      }
    }
  }
}

std::vector<Segment> DetectSegments(const GuidelineDocument& doc,
                                    const TriggerLexicon& lex) {
  const DocumentIndex index(doc);
  const std::vector<bool> inherited = InheritedBlocks(index);
  std::vector<Segment> segments;

  for (std::size_t k = 0; k < index.sentence_count(); ++k) {
    const std::size_t first = index.sentence_first_unit(k);
    const std::size_t last = index.sentence_last_unit(k);
    const auto hit = FindCondition(index, first, last, lex);

    std::optional<std::size_t> fully_covered;
    if (hit) {
      Segment c;
      c.kind = SegmentKind::kCondition;
      c.span = {hit->unit, hit->unit};
      c.begin = hit->begin;
      c.end = hit->end;
      const std::string& host = index.proposition(hit->unit).text;
      c.text = host.substr(hit->begin, hit->end - hit->begin);
      c.trigger = hit->trigger;
      c.placement = ClassifyPlacement(c, index);
      if (hit->begin == 0 && hit->end >= ContentEnd(host)) fully_covered = hit->unit;
      segments.push_back(std::move(c));
    }

    std::vector<std::string> parts;
    std::optional<std::size_t> rec_first;
    std::size_t rec_last = 0;
    for (std::size_t u = first; u <= last; ++u) {
      if (fully_covered && *fully_covered == u) continue;
      const std::string& t = index.proposition(u).text;
      parts.push_back(hit && hit->unit == u ? RemoveSpan(t, hit->begin, hit->end) : t);
      if (!rec_first) rec_first = u;
      rec_last = u;
    }
    if (!rec_first) continue;
    std::string rec_text = text::CollapseWhitespace(text::Join(parts, ", "));
    const auto tokens = text::Tokenize(rec_text);
    if (tokens.empty()) continue;
    if (!inherited[index.sentence_block(k)] && !HasDeonticMarker(tokens, lex)) continue;

    Segment r;
    r.kind = SegmentKind::kRecommendation;
    r.span = {*rec_first, rec_last};
    r.begin = 0;
    r.end = index.proposition(rec_last).text.size();
    r.text = std::move(rec_text);
    r.placement = Placement::kNotApplicable;
    segments.push_back(std::move(r));
  }

  SortSegments(segments, index);
  std::size_t conditions = 0;
  std::size_t recommendations = 0;
  for (auto& s : segments) {
    s.id = s.kind == SegmentKind::kCondition ? "c" + std::to_string(++conditions)
                                             : "r" + std::to_string(++recommendations);
  }
  return segments;
}

nlohmann::json SegmentToJson(const Segment& s) {
  return {{"id", s.id},
          {"kind", SegmentKindName(s.kind)},
          {"span", {s.span.first, s.span.last}},
          {"begin", s.begin},
          {"end", s.end},
          {"text", s.text},
          {"trigger", s.trigger},
          {"placement", PlacementName(s.placement)}};
}

Segment SegmentFromJson(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected object");
  Segment s;
  try {
    s.id = j.at("id").get<std::string>();
    s.kind = SegmentKindFromName(j.at("kind").get<std::string>());
    const auto& span = j.at("span");
    s.span = {span.at(0).get<std::size_t>(), span.at(1).get<std::size_t>()};
    s.begin = j.value("begin", std::size_t{0});
    s.end = j.value("end", std::size_t{0});
    s.text = j.value("text", std::string());
    s.trigger = j.value("trigger", std::string());
    s.placement = PlacementFromName(j.value(
        "placement", std::string(s.kind == SegmentKind::kCondition ? "integrated"
                                                                   : "not_applicable")));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path, e.what());
  }
  return s;
}

}  // namespace structure
