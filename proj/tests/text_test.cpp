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

#include "structure/text.hpp"

#include <gtest/gtest.h>

namespace structure::text {
namespace {

TEST(TextTest, ValidatesUtf8) {
  EXPECT_TRUE(IsValidUtf8("immunodéprimé"));
  EXPECT_TRUE(IsValidUtf8(""));
  EXPECT_FALSE(IsValidUtf8("\xC3"));
  EXPECT_FALSE(IsValidUtf8("\xC0\x80"));  // overlong
  EXPECT_FALSE(IsValidUtf8("\xED\xA0\x80"));  // surrogate
}

TEST(TextTest, DecodeEncodeRoundTrip) {
  const std::string s = "Éà € 😀 ok";
  EXPECT_EQ(Encode(Decode(s)), s);
  EXPECT_EQ(Decode("\xFF")[0], U'�');
}

TEST(TextTest, LowercasesAccentedCapitals) {
  EXPECT_EQ(ToLower("ÉTÉ Œuvre ÀÇ"), "été œuvre àç");
  EXPECT_EQ(ToLower("ABC"), "abc");
}

TEST(TextTest, TokenizeSplitsOnApostropheAndHyphen) {
  const auto toks = TokenStrings("L'enfant contre-indiqué, 48 heures.");
  const std::vector<std::string> want = {"l", "enfant", "contre", "indiqué", "48", "heures"};
  EXPECT_EQ(toks, want);
}

TEST(TextTest, TokenOffsetsPointIntoSource) {
  const std::string s = "Chez le sujet immunodéprimé, un";
  for (const auto& t : Tokenize(s)) {
    EXPECT_EQ(ToLower(s.substr(t.begin, t.end - t.begin)), t.text);
  }
}

TEST(TextTest, FindPhrase) {
  const auto toks = Tokenize("Le traitement est recommandé si besoin");
  EXPECT_EQ(FindPhrase(toks, {"est", "recommandé"}), 2u);
  EXPECT_EQ(FindPhrase(toks, {"si"}), 4u);
  EXPECT_EQ(FindPhrase(toks, {"si"}, 5), std::string::npos);
  EXPECT_TRUE(StartsWithPhrase(toks, {"le", "traitement"}));
  EXPECT_FALSE(StartsWithPhrase(toks, {"traitement"}));
}

TEST(TextTest, ElidedFormsMatchFullWords) {
  const auto toks = Tokenize("En cas d'allergie, l\u2019enfant s'il tousse lorsqu'il");
  EXPECT_EQ(FindPhrase(toks, {"en", "cas", "de"}), 0u);
  EXPECT_TRUE(toks[2].elided);
  EXPECT_TRUE(TokenMatches(toks[4], "le"));
  EXPECT_TRUE(TokenMatches(toks[4], "la"));
  EXPECT_FALSE(TokenMatches(toks[4], "les"));
  EXPECT_EQ(FindPhrase(toks, {"si"}), 6u);
  EXPECT_EQ(FindPhrase(toks, {"lorsque"}), 9u);
  // A bare letter is not an elision.
  const auto plain = Tokenize("vitamine d ou e");
  EXPECT_FALSE(plain[1].elided);
  EXPECT_EQ(FindPhrase(plain, {"de"}), std::string::npos);
  // Neither is a trailing apostrophe.
  EXPECT_FALSE(Tokenize("d' ")[0].elided);
}

TEST(TextTest, WhitespaceHelpers) {
  EXPECT_EQ(Trim("  a b \n"), "a b");
  EXPECT_EQ(CollapseWhitespace(" a \t\n b "), "a b");
  EXPECT_EQ(CodepointCount("é€😀"), 3u);
  EXPECT_EQ(NonSpace("a b\n c"), U"abc");
  EXPECT_EQ(Join({"a", "b", "c"}, ", "), "a, b, c");
}

}  // namespace
}  // namespace structure::text
