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

// UTF-8 helpers and the word tokenizer shared by every lexical feature.
//
// Tokens are lowercased, punctuation-stripped and accent-preserving:
// "Non-immunodéprimé" yields {"non", "immunodéprimé"}. Only Latin scripts
// get case folding, which covers the French guideline material this library
// targets.

#ifndef STRUCTURE_TEXT_HPP_
#define STRUCTURE_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace structure::text {

bool IsValidUtf8(std::string_view input);

// Decodes valid UTF-8. Invalid sequences decode as U+FFFD.
std::u32string Decode(std::string_view input);
std::string Encode(std::u32string_view input);

char32_t ToLower(char32_t c);
std::string ToLower(std::string_view input);

// Letters and digits. Apostrophes, hyphens and punctuation separate words.
bool IsWordChar(char32_t c);
bool IsSpace(char32_t c);

struct Token {
  std::string text;   // lowercased
  std::size_t begin;  // byte offsets into the source text
  std::size_t end;
  bool elided = false;  // directly followed by an apostrophe and a word
};

// True when `token` spells `word`, counting elided forms: "d'" for "de",
// "l'" for "le" or "la", "qu'" for "que", "s'" for "si".
bool TokenMatches(const Token& token, std::string_view word);

std::vector<Token> Tokenize(std::string_view input);
std::vector<std::string> TokenStrings(std::string_view input);

// Position of the first occurrence of `phrase` (already tokenized) in
// `tokens` at or after `from`, or npos.
std::size_t FindPhrase(const std::vector<Token>& tokens,
                       const std::vector<std::string>& phrase,
                       std::size_t from = 0);
bool StartsWithPhrase(const std::vector<Token>& tokens,
                      const std::vector<std::string>& phrase);

std::string Trim(std::string_view input);
std::string CollapseWhitespace(std::string_view input);
std::size_t CodepointCount(std::string_view input);

// All non-whitespace code points, in order. Used by text-preservation checks.
std::u32string NonSpace(std::string_view input);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace structure::text

#endif  // STRUCTURE_TEXT_HPP_
