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

#include "structure/features.hpp"

#include <algorithm>
#include <set>

#include "structure/error.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

constexpr std::size_t kSharedTermMinLength = 5;

bool ContainsPhrase(const std::vector<text::Token>& tokens, const std::string& pattern) {
  return text::FindPhrase(tokens, text::TokenStrings(pattern)) != std::string::npos;
}

// Terms split by polarity: bare occurrences and occurrences right after a
// negation prefix ("non t", "sans t").
struct Polarity {
  std::set<std::string> positive;
  std::set<std::string> negative;
};

Polarity PolarityOf(const std::vector<text::Token>& tokens,
                    const std::vector<std::vector<std::string>>& prefixes) {
  Polarity out;
  std::vector<bool> negated(tokens.size(), false);
  std::vector<bool> is_prefix(tokens.size(), false);
  for (const auto& prefix : prefixes) {
    for (std::size_t at = text::FindPhrase(tokens, prefix); at != std::string::npos;
         at = text::FindPhrase(tokens, prefix, at + 1)) {
      for (std::size_t k = at; k < at + prefix.size(); ++k) is_prefix[k] = true;
      if (at + prefix.size() < tokens.size()) negated[at + prefix.size()] = true;
    }
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (negated[i]) {
      out.negative.insert(tokens[i].text);
    } else if (!is_prefix[i]) {
      out.positive.insert(tokens[i].text);
    }
  }
  return out;
}

bool OnlyIn(const std::set<std::string>& a, const std::set<std::string>& b,
            const std::string& t) {
  return a.contains(t) && !b.contains(t);
}

}  // namespace

std::string_view RelativePositionName(RelativePosition p) {
  switch (p) {
    case RelativePosition::kSameSentenceAfter: return "same_sentence_after";
    case RelativePosition::kLaterSameParagraph: return "later_same_paragraph";
    case RelativePosition::kNextBlock: return "next_block";
    case RelativePosition::kLaterSection: return "later_section";
  }
  return "later_section";
}

std::string_view FeatureCategoryName(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::kMaterialStructure: return "material_structure";
    case FeatureCategory::kLexicalRelation: return "lexical_relation";
    case FeatureCategory::kDiscourseConnector: return "discourse_connector";
    case FeatureCategory::kCoreference: return "coreference";
  }
  return "material_structure";
}

const std::vector<std::string>& FeatureNames() {
  static const std::vector<std::string> names = {
      "is_detached",
      "same_sentence",
      "same_paragraph",
      "same_section",
      "same_visual_position",
      "s_relative_position",
      "s_in_list_introduced_by_c",
      "antonym_relation",
      "shared_term",
      "begins_with_coordination_marker",
      "demonstrative_coreference",
  };
  return names;
}

FeatureCategory CategoryOf(std::string_view name) {
  if (name == "antonym_relation" || name == "shared_term") {
    return FeatureCategory::kLexicalRelation;
  }
  if (name == "begins_with_coordination_marker") return FeatureCategory::kDiscourseConnector;
  if (name == "demonstrative_coreference") return FeatureCategory::kCoreference;
  const auto& names = FeatureNames();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorKind::kInvalidInput, "unknown feature: " + std::string(name));
  }
  return FeatureCategory::kMaterialStructure;
}

std::string FeatureValue(const CoupleFeatures& f, std::string_view name) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  if (name == "is_detached") return b(f.is_detached);
  if (name == "same_sentence") return b(f.same_sentence);
  if (name == "same_paragraph") return b(f.same_paragraph);
  if (name == "same_section") return b(f.same_section);
  if (name == "same_visual_position") return b(f.same_visual_position);
  if (name == "s_relative_position") {
    return std::string(RelativePositionName(f.s_relative_position));
  }
  if (name == "s_in_list_introduced_by_c") return b(f.s_in_list_introduced_by_c);
  if (name == "antonym_relation") return b(f.antonym_relation);
  if (name == "shared_term") return b(f.shared_term);
  if (name == "begins_with_coordination_marker") return b(f.begins_with_coordination_marker);
  if (name == "demonstrative_coreference") return b(f.demonstrative_coreference);
  throw Error(ErrorKind::kInvalidInput, "unknown feature: " + std::string(name));
}

RelativePosition DeriveRelativePosition(bool same_sentence, bool same_paragraph,
                                        bool same_section) {
  if (same_sentence) return RelativePosition::kSameSentenceAfter;
  if (same_paragraph) return RelativePosition::kLaterSameParagraph;
  if (same_section) return RelativePosition::kNextBlock;
  return RelativePosition::kLaterSection;
}

bool IsConsistent(const CoupleFeatures& f) {
  if (f.same_sentence && !f.same_paragraph) return false;
  if (f.same_paragraph && !f.same_section) return false;
  if (f.s_relative_position !=
      DeriveRelativePosition(f.same_sentence, f.same_paragraph, f.same_section)) {
    return false;
  }
  if (f.s_in_list_introduced_by_c && (f.same_paragraph || !f.same_section)) return false;
  return true;
}

bool SameVisualPosition(const PropositionSpan& c_span, const PropositionSpan& s_span,
                        const DocumentIndex& index) {
  const Proposition& c = index.proposition(c_span.first);
  const Proposition& s = index.proposition(s_span.first);
  if (!c.starts_block || !s.starts_block) return false;
  const Block& cb = index.block(index.block_of(c_span.first));
  const Block& sb = index.block(index.block_of(s_span.first));
  return cb.kind == sb.kind && cb.list_depth == sb.list_depth;
}

bool SameVisualPosition(const PropositionSpan& c_span, const PropositionSpan& s_span,
                        const GuidelineDocument& doc) {
  return SameVisualPosition(c_span, s_span, DocumentIndex(doc));
}

bool AntonymRelation(std::string_view c_text, std::string_view s_text,
                     const RelationLexicons& lex) {
  const auto a = text::Tokenize(c_text);
  const auto b = text::Tokenize(s_text);
  for (const auto& [x, y] : lex.antonym_pairs) {
    const bool xa = ContainsPhrase(a, x), xb = ContainsPhrase(b, x);
    const bool ya = ContainsPhrase(a, y), yb = ContainsPhrase(b, y);
    if ((xa && yb && !xb && !ya) || (ya && xb && !yb && !xa)) return true;
  }
  std::vector<std::vector<std::string>> prefixes;
  for (const auto& p : lex.negation_prefixes) prefixes.push_back(text::TokenStrings(p));
  const Polarity pa = PolarityOf(a, prefixes);
  const Polarity pb = PolarityOf(b, prefixes);
  for (const auto& t : pa.positive) {
    if (OnlyIn(pa.positive, pa.negative, t) && OnlyIn(pb.negative, pb.positive, t)) {
      return true;
    }
  }
  for (const auto& t : pb.positive) {
    if (OnlyIn(pb.positive, pb.negative, t) && OnlyIn(pa.negative, pa.positive, t)) {
      return true;
    }
  }
  return false;
}

bool SharedTerm(std::string_view c_text, std::string_view s_text) {
  std::set<std::string> left;
  for (auto& t : text::TokenStrings(c_text)) {
    if (text::CodepointCount(t) >= kSharedTermMinLength) left.insert(std::move(t));
  }
  for (const auto& t : text::TokenStrings(s_text)) {
    if (left.contains(t)) return true;
  }
  return false;
}

bool CoordinationMarker(std::string_view s_text, const RelationLexicons& lex) {
  const auto tokens = text::Tokenize(s_text);
  return std::any_of(lex.coordination_markers.begin(), lex.coordination_markers.end(),
                     [&tokens](const std::string& p) {
                       return text::StartsWithPhrase(tokens, text::TokenStrings(p));
                     });
}

bool DemonstrativeCoreference(std::string_view s_text, const RelationLexicons& lex) {
  const auto tokens = text::Tokenize(s_text);
  return std::any_of(lex.demonstrative_np_patterns.begin(),
                     lex.demonstrative_np_patterns.end(),
                     [&tokens](const std::string& p) { return ContainsPhrase(tokens, p); });
}

CoupleFeatures ExtractFeatures(const Segment& c, const Segment& s,
                               const DocumentIndex& index, const RelationLexicons& lex) {
  if (c.kind != SegmentKind::kCondition) {
    throw Error(ErrorKind::kContract, "extract_features: first segment is not a condition");
  }
  if (c.span.last >= index.size() || s.span.last >= index.size()) {
    throw Error(ErrorKind::kContract, "extract_features: span out of range");
  }
  const std::size_t c_sentence = index.sentence_of(c.span.first);
  const std::size_t s_sentence = index.sentence_of(s.span.first);
  if (s_sentence != c_sentence && s.span.first < c.span.first) {
    throw Error(ErrorKind::kContract, "couple order");
  }

  CoupleFeatures f;
  f.is_detached = c.placement == Placement::kDetached;
  f.same_sentence = c_sentence == s_sentence;
  f.same_paragraph = index.block_of(c.span.first) == index.block_of(s.span.first);
  f.same_section = index.section_of(c.span.first) == index.section_of(s.span.first);
  f.same_visual_position = SameVisualPosition(c.span, s.span, index);
  f.s_relative_position =
      DeriveRelativePosition(f.same_sentence, f.same_paragraph, f.same_section);

  // c introduces a list when it runs to the end of a ':'-terminated sentence
  // closing its block, and s sits in the run of deeper list items after it.
  const std::size_t c_last_sentence = index.sentence_of(c.span.last);
  const std::size_t c_block = index.block_of(c.span.last);
  const std::size_t s_block = index.block_of(s.span.first);
  const std::string intro = text::Trim(index.sentence(c_last_sentence).raw_text);
  const bool introduces =
      c.span.last == index.sentence_last_unit(c_last_sentence) &&
      index.block_last_sentence(c_block) == c_last_sentence && !intro.empty() &&
      intro.back() == ':';
  if (introduces && s_block > c_block && f.same_section) {
    const int depth = index.block(c_block).list_depth;
    bool in_run = true;
    for (std::size_t b = c_block + 1; b <= s_block && in_run; ++b) {
      const Block& block = index.block(b);
      in_run = block.kind == BlockKind::kListItem && block.list_depth > depth;
    }
    f.s_in_list_introduced_by_c = in_run;
  }

  f.antonym_relation = AntonymRelation(c.text, s.text, lex);
  f.shared_term = SharedTerm(c.text, s.text);
  f.begins_with_coordination_marker =
      CoordinationMarker(index.proposition(s.span.first).text, lex);
  f.demonstrative_coreference =
      DemonstrativeCoreference(index.sentence(s_sentence).raw_text, lex);
  return f;
}

CoupleFeatures ExtractFeatures(const Segment& c, const Segment& s,
                               const GuidelineDocument& doc, const RelationLexicons& lex) {
  return ExtractFeatures(c, s, DocumentIndex(doc), lex);
}

nlohmann::json FeaturesToJson(const CoupleFeatures& f) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& name : FeatureNames()) {
    const std::string v = FeatureValue(f, name);
    if (v == "true" || v == "false") {
      j[name] = v == "true";
    } else {
      j[name] = v;
    }
  }
  return j;
}

}  // namespace structure
