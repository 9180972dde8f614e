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

#include "structure/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "structure/error.hpp"

namespace structure {
namespace {

using nlohmann::json;

std::vector<std::string> StringList(const json& j, const char* key,
                                    std::vector<std::string> fallback) {
  if (!j.contains(key)) return fallback;
  const json& list = j.at(key);
  if (!list.is_array()) throw SchemaError(std::string("/") + key, "expected array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_string()) {
      throw SchemaError("/" + std::string(key) + "/" + std::to_string(i),
                        "expected string");
    }
    out.push_back(list[i].get<std::string>());
  }
  return out;
}

void CheckPatterns(const std::vector<std::string>& patterns, const char* what) {
  for (const auto& p : patterns) {
    if (text::TokenStrings(p).empty()) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string("lexicon: empty pattern in ") + what);
    }
  }
}

}  // namespace

std::string_view MatchPositionName(MatchPosition position) {
  return position == MatchPosition::kSentenceInitial ? "sentence_initial"
                                                     : "anywhere";
}

TriggerLexicon TriggerLexicon::FrenchDefaults() {
  TriggerLexicon lex;
  for (const char* p :
       {"si", "en cas de", "chez", "lorsque", "quand", "dans le cas où"}) {
    lex.condition_markers.push_back({p, MatchPosition::kAnywhere});
  }
  lex.deontic_markers = {
      "doit",
      "doivent",
      "ne doit pas",
      "il est recommandé",
      "il convient",
      "est recommandé",
      "est recommandée",
      "sont recommandés",
      "sont recommandées",
      "est conseillé",
      "est conseillée",
      "sont conseillés",
      "sont conseillées",
      "est indiqué",
      "est indiquée",
      "sont indiqués",
      "sont indiquées",
      "est préconisé",
      "est préconisée",
      "est nécessaire",
      "est contre-indiqué",
      "est contre-indiquée",
      "est déconseillé",
      "est déconseillée",
      "sont contre-indiqués",
      "sont contre-indiquées",
      "sont déconseillés",
      "sont déconseillées",
      "sont préconisés",
      "sont préconisées",
      "sont nécessaires",
  };
  lex.negation_prefixes = {"non ", "sans "};
  lex.anaphoric_determiners = {"ce", "cet", "cette", "ces"};
  return lex;
}

TriggerLexicon TriggerLexicon::FromJson(const json& j) {
  if (!j.is_object()) throw SchemaError("", "lexicon must be an object");
  TriggerLexicon lex;
  const TriggerLexicon defaults = FrenchDefaults();
  if (!j.contains("condition_markers") || !j.at("condition_markers").is_array()) {
    throw SchemaError("/condition_markers", "expected array");
  }
  const json& markers = j.at("condition_markers");
  for (std::size_t i = 0; i < markers.size(); ++i) {
    const std::string path = "/condition_markers/" + std::to_string(i);
    const json& m = markers[i];
    ConditionMarker marker;
    if (m.is_string()) {
      marker.pattern = m.get<std::string>();
    } else if (m.is_object() && m.contains("pattern") && m.at("pattern").is_string()) {
      marker.pattern = m.at("pattern").get<std::string>();
      const std::string pos = m.value("match_position", std::string("anywhere"));
      if (pos == "sentence_initial") {
        marker.match_position = MatchPosition::kSentenceInitial;
      } else if (pos != "anywhere") {
        throw SchemaError(path + "/match_position",
                          "expected sentence_initial or anywhere");
      }
    } else {
      throw SchemaError(path, "expected {pattern, match_position}");
    }
    lex.condition_markers.push_back(std::move(marker));
  }
  if (!j.contains("deontic_markers")) {
    throw SchemaError("/deontic_markers", "missing");
  }
  lex.deontic_markers = StringList(j, "deontic_markers", {});
  lex.negation_prefixes = StringList(j, "negation_prefixes", defaults.negation_prefixes);
  lex.anaphoric_determiners =
      StringList(j, "anaphoric_determiners", defaults.anaphoric_determiners);
  lex.Validate();
  return lex;
}

json TriggerLexicon::ToJson() const {
  json markers = json::array();
  for (const auto& m : condition_markers) {
    markers.push_back({{"pattern", m.pattern},
                       {"match_position", MatchPositionName(m.match_position)}});
  }
  return {{"condition_markers", markers},
          {"deontic_markers", deontic_markers},
          {"negation_prefixes", negation_prefixes},
          {"anaphoric_determiners", anaphoric_determiners}};
}

void TriggerLexicon::Validate() const {
  for (const auto& m : condition_markers) {
    if (text::TokenStrings(m.pattern).empty()) {
      throw Error(ErrorKind::kInvalidInput,
                  "lexicon: empty pattern in condition_markers");
    }
  }
  CheckPatterns(deontic_markers, "deontic_markers");
  CheckPatterns(negation_prefixes, "negation_prefixes");
}

RelationLexicons RelationLexicons::FrenchDefaults() {
  RelationLexicons lex;
  lex.antonym_pairs = {{"adulte", "enfant"},
                       {"immunodéprimé", "immunocompétent"},
                       {"symptomatique", "asymptomatique"},
                       {"aigu", "chronique"},
                       {"primaire", "secondaire"}};
  lex.coordination_markers = {"de même", "par ailleurs", "en outre", "également"};
  lex.demonstrative_np_patterns = {"dans ce cas", "dans ces cas",
                                   "chez ces patients", "cette situation"};
  lex.negation_prefixes = {"non ", "sans "};
  return lex;
}

RelationLexicons RelationLexicons::FromJson(const json& j) {
  if (!j.is_object()) throw SchemaError("", "relation lexicon must be an object");
  RelationLexicons lex;
  const RelationLexicons defaults = FrenchDefaults();
  if (j.contains("antonym_pairs")) {
    const json& pairs = j.at("antonym_pairs");
    if (!pairs.is_array()) throw SchemaError("/antonym_pairs", "expected array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const json& p = pairs[i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        throw SchemaError("/antonym_pairs/" + std::to_string(i),
                          "expected [term, term]");
      }
      lex.antonym_pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  }
  lex.coordination_markers = StringList(j, "coordination_markers", {});
  lex.demonstrative_np_patterns = StringList(j, "demonstrative_np_patterns", {});
  lex.negation_prefixes = StringList(j, "negation_prefixes", defaults.negation_prefixes);
  lex.Validate();
  return lex;
}

json RelationLexicons::ToJson() const {
  json pairs = json::array();
  for (const auto& [a, b] : antonym_pairs) pairs.push_back({a, b});
  return {{"antonym_pairs", pairs},
          {"coordination_markers", coordination_markers},
          {"demonstrative_np_patterns", demonstrative_np_patterns},
          {"negation_prefixes", negation_prefixes}};
}

void RelationLexicons::Validate() const {
  for (const auto& [a, b] : antonym_pairs) {
    if (text::TokenStrings(a).empty() || text::TokenStrings(b).empty()) {
      throw Error(ErrorKind::kInvalidInput, "lexicon: empty antonym term");
    }
  }
  CheckPatterns(coordination_markers, "coordination_markers");
  CheckPatterns(demonstrative_np_patterns, "demonstrative_np_patterns");
  CheckPatterns(negation_prefixes, "negation_prefixes");
}

AbbreviationList AbbreviationList::FrenchDefaults() {
  return AbbreviationList{{"cf",  "ex",   "p",    "pp",  "env", "fig", "vol",
                           "chap", "dr",  "pr",   "m",   "mm",  "mme", "mmes",
                           "mlle", "st",  "ste",  "n",   "no",  "réf", "éd",
                           "coll", "vs",  "approx", "i.e", "e.g", "c.-à-d"}};
}

AbbreviationList AbbreviationList::FromText(std::string_view content) {
  AbbreviationList list;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    std::string entry = text::Trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    if (entry.back() == '.') entry.pop_back();
    list.entries.push_back(text::ToLower(entry));
  }
  return list;
}

bool AbbreviationList::Contains(std::string_view word) const {
  std::string key = text::ToLower(word);
  if (!key.empty() && key.back() == '.') key.pop_back();
  return std::find(entries.begin(), entries.end(), key) != entries.end();
}

std::optional<MarkerMatch> FindConditionMarker(
    const std::vector<text::Token>& tokens, const TriggerLexicon& lex,
    bool sentence_initial) {
  std::optional<MarkerMatch> best;
  for (const auto& marker : lex.condition_markers) {
    const std::vector<std::string> phrase = text::TokenStrings(marker.pattern);
    std::size_t from = 0;
    while (true) {
      const std::size_t at = text::FindPhrase(tokens, phrase, from);
      if (at == std::string::npos) break;
      from = at + 1;
      if (marker.match_position == MatchPosition::kSentenceInitial &&
          (at != 0 || !sentence_initial)) {
        break;
      }
      const std::size_t next = at + phrase.size();
      if (next < tokens.size() &&
          std::find(lex.anaphoric_determiners.begin(),
                    lex.anaphoric_determiners.end(),
                    tokens[next].text) != lex.anaphoric_determiners.end()) {
        continue;
      }
      const bool better = !best || at < best->token ||
                          (at == best->token && phrase.size() > best->length);
      if (better) best = MarkerMatch{at, phrase.size(), &marker};
      break;
    }
  }
  return best;
}

namespace {

// "n'est pas recommandé" carries the marker "est recommandé": the second
// half of a negation is dropped from both sides before matching.
bool IsNegationAdverb(std::string_view word) {
  return word == "pas" || word == "plus" || word == "jamais";
}

}  // namespace

bool HasDeonticMarker(const std::vector<text::Token>& tokens,
                      const TriggerLexicon& lex) {
  std::vector<text::Token> kept;
  for (const auto& t : tokens) {
    if (!IsNegationAdverb(t.text)) kept.push_back(t);
  }
  for (const auto& pattern : lex.deontic_markers) {
    std::vector<std::string> phrase;
    for (auto& w : text::TokenStrings(pattern)) {
      if (!IsNegationAdverb(w)) phrase.push_back(std::move(w));
    }
    if (text::FindPhrase(kept, phrase) != std::string::npos) return true;
  }
  return false;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace structure
