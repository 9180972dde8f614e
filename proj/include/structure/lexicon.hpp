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

// Configurable word lists: condition/deontic triggers for the segmenter,
// relation lexicons for the couple features, and the sentence splitter's
// abbreviation stop-list. Every list ships as a config file under
// data/lexicon/; the compiled-in French defaults mirror those files.

#ifndef STRUCTURE_LEXICON_HPP_
#define STRUCTURE_LEXICON_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "structure/text.hpp"

namespace structure {

enum class MatchPosition { kSentenceInitial, kAnywhere };

std::string_view MatchPositionName(MatchPosition position);

struct ConditionMarker {
  std::string pattern;
  MatchPosition match_position = MatchPosition::kAnywhere;
};

struct TriggerLexicon {
  std::vector<ConditionMarker> condition_markers;
  std::vector<std::string> deontic_markers;
  std::vector<std::string> negation_prefixes;
  // A condition marker directly followed by one of these determiners is an
  // anaphoric frame ("chez ces patients"), not a new condition.
  std::vector<std::string> anaphoric_determiners;

  static TriggerLexicon FrenchDefaults();
  static TriggerLexicon FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;

  // Throws kInvalidInput when a pattern is empty or has no word token.
  void Validate() const;
};

struct RelationLexicons {
  std::vector<std::pair<std::string, std::string>> antonym_pairs;
  std::vector<std::string> coordination_markers;
  std::vector<std::string> demonstrative_np_patterns;
  std::vector<std::string> negation_prefixes;

  static RelationLexicons FrenchDefaults();
  static RelationLexicons FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
  void Validate() const;
};

// Lowercased abbreviations without their trailing period ("cf", "ex").
struct AbbreviationList {
  std::vector<std::string> entries;

  static AbbreviationList FrenchDefaults();
  // One entry per line; blank lines and lines starting with '#' are skipped.
  static AbbreviationList FromText(std::string_view text);

  bool Contains(std::string_view word) const;
};

// A condition trigger found in a token stream.
struct MarkerMatch {
  std::size_t token = 0;   // index of the first matched token
  std::size_t length = 0;  // number of tokens
  const ConditionMarker* marker = nullptr;
};

// Leftmost-longest condition marker in `tokens`. Sentence-initial markers
// only match at token 0, and only when `sentence_initial` is set.
std::optional<MarkerMatch> FindConditionMarker(
    const std::vector<text::Token>& tokens, const TriggerLexicon& lex,
    bool sentence_initial);

// True when any deontic marker occurs in `tokens`.
bool HasDeonticMarker(const std::vector<text::Token>& tokens,
                      const TriggerLexicon& lex);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace structure

#endif  // STRUCTURE_LEXICON_HPP_
