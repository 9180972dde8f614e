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

// Step one of the pipeline: condition and recommendation segments.

#ifndef STRUCTURE_SEGMENTER_HPP_
#define STRUCTURE_SEGMENTER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "structure/doc_model.hpp"
#include "structure/lexicon.hpp"

namespace structure {

enum class SegmentKind { kCondition, kRecommendation };
enum class Placement { kDetached, kIntegrated, kNotApplicable };

std::string_view SegmentKindName(SegmentKind kind);
SegmentKind SegmentKindFromName(std::string_view name);
std::string_view PlacementName(Placement placement);
Placement PlacementFromName(std::string_view name);

// Inclusive range of global proposition indices (DocumentIndex order).
struct PropositionSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  bool Overlaps(const PropositionSpan& other) const {
    return first <= other.last && other.first <= last;
  }
  bool operator==(const PropositionSpan&) const = default;
};

struct Segment {
  std::string id;
  SegmentKind kind = SegmentKind::kRecommendation;
  PropositionSpan span;
  // Byte offsets of the segment text inside the first and last proposition.
  // An integrated condition covers only part of its host proposition.
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
  std::string trigger;  // matched condition marker; empty for recommendations
  Placement placement = Placement::kNotApplicable;

  bool operator==(const Segment&) const = default;
};

std::vector<Segment> DetectSegments(const GuidelineDocument& doc,
                                    const TriggerLexicon& lex);

// Throws Error(kContract) when `c` is not a condition.
Placement ClassifyPlacement(const Segment& c, const GuidelineDocument& doc);
Placement ClassifyPlacement(const Segment& c, const DocumentIndex& index);

// Document order used by the scope builder: by sentence, conditions before
// the recommendation that shares their sentence, then by position.
bool SegmentPrecedes(const Segment& a, const Segment& b, const DocumentIndex& index);
void SortSegments(std::vector<Segment>& segments, const DocumentIndex& index);

// Throws Error(kInconsistent) on same-kind overlap or out-of-range spans.
void CheckSegmentation(const std::vector<Segment>& segments, const DocumentIndex& index);

nlohmann::json SegmentToJson(const Segment& s);
Segment SegmentFromJson(const nlohmann::json& j, const std::string& path = "");

}  // namespace structure

#endif  // STRUCTURE_SEGMENTER_HPP_
