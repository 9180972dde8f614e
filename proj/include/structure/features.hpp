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

// Couple features for a (condition, segment) pair, grouped in four families:
// material structure, lexical relations, discourse connectors and
// co-reference. The vector is closed: scope rules and the information-gain
// ranking address fields by the names returned from FeatureNames().

#ifndef STRUCTURE_FEATURES_HPP_
#define STRUCTURE_FEATURES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "structure/doc_model.hpp"
#include "structure/lexicon.hpp"
#include "structure/segmenter.hpp"

namespace structure {

enum class RelativePosition {
  kSameSentenceAfter,
  kLaterSameParagraph,
  kNextBlock,
  kLaterSection,
};

std::string_view RelativePositionName(RelativePosition p);

enum class FeatureCategory {
  kMaterialStructure,
  kLexicalRelation,
  kDiscourseConnector,
  kCoreference,
};

std::string_view FeatureCategoryName(FeatureCategory c);

struct CoupleFeatures {
  // Material structure.
  bool is_detached = false;
  bool same_sentence = false;
  bool same_paragraph = false;
  bool same_section = false;
  bool same_visual_position = false;
  RelativePosition s_relative_position = RelativePosition::kLaterSection;
  bool s_in_list_introduced_by_c = false;
  // Lexical relations.
  bool antonym_relation = false;
  bool shared_term = false;
  // Discourse connectors.
  bool begins_with_coordination_marker = false;
  // Co-reference.
  bool demonstrative_coreference = false;

  bool operator==(const CoupleFeatures&) const = default;
};

// Version tag of the feature set; bump when a field is added or redefined.
inline constexpr int kFeatureSetVersion = 1;

const std::vector<std::string>& FeatureNames();
FeatureCategory CategoryOf(std::string_view feature_name);

// Value of a named feature as a discrete label ("true", "false", or the
// relative-position name). Throws Error(kInvalidInput) for unknown names.
std::string FeatureValue(const CoupleFeatures& f, std::string_view feature_name);

// same_sentence => same_paragraph => same_section, the relative position
// agrees with them, and a list introduced by c lies in another block of the
// same section.
bool IsConsistent(const CoupleFeatures& f);
RelativePosition DeriveRelativePosition(bool same_sentence, bool same_paragraph,
                                        bool same_section);

// Throws Error(kContract) with "couple order" when s lies entirely before c.
CoupleFeatures ExtractFeatures(const Segment& c, const Segment& s,
                               const DocumentIndex& index, const RelationLexicons& lex);
CoupleFeatures ExtractFeatures(const Segment& c, const Segment& s,
                               const GuidelineDocument& doc, const RelationLexicons& lex);

bool SameVisualPosition(const PropositionSpan& c_span, const PropositionSpan& s_span,
                        const DocumentIndex& index);
bool SameVisualPosition(const PropositionSpan& c_span, const PropositionSpan& s_span,
                        const GuidelineDocument& doc);

// Symmetric in its text arguments.
bool AntonymRelation(std::string_view c_text, std::string_view s_text,
                     const RelationLexicons& lex);
bool SharedTerm(std::string_view c_text, std::string_view s_text);
bool CoordinationMarker(std::string_view s_text, const RelationLexicons& lex);
bool DemonstrativeCoreference(std::string_view s_text, const RelationLexicons& lex);

nlohmann::json FeaturesToJson(const CoupleFeatures& f);

}  // namespace structure

#endif  // STRUCTURE_FEATURES_HPP_
