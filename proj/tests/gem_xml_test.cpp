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

#include <gtest/gtest.h>

#include "generators.hpp"
#include "structure/error.hpp"
#include "structure/pipeline.hpp"

namespace structure {
namespace {

TreeNode Node(const std::string& id, SegmentKind kind, const std::string& text,
              const std::string& parent, std::size_t prop) {
  TreeNode n;
  n.id = id;
  n.kind = kind;
  n.text = text;
  n.parent = parent;
  n.span = {prop, prop};
  n.sentence = prop;
  n.placement = kind == SegmentKind::kCondition ? Placement::kDetached : Placement::kNotApplicable;
  return n;
}

TEST(EmitXmlTest, EmptyTree) {
  ScopeTree t;
  t.doc_id = "d";
  t.title = "T";
  const std::string xml = EmitXml(t);
  EXPECT_NE(xml.find("<guideline>"), std::string::npos);
  EXPECT_NE(xml.find("<knowledgeComponent/>"), std::string::npos);
  EXPECT_EQ(xml.rfind("</guideline>\n"), xml.size() - 13);
  EXPECT_TRUE(StructurallyEqual(ParseXml(xml), t));
}

TEST(EmitXmlTest, OneConditionOneAction) {
  ScopeTree t;
  t.doc_id = "d";
  t.nodes = {Node("c1", SegmentKind::kCondition, "Chez l'adulte", "", 0),
             Node("r1", SegmentKind::kRecommendation, "le repos est conseillé.", "c1", 1)};
  const std::string xml = EmitXml(t);
  const auto conditional = xml.find("<conditional id=\"c1\"");
  const auto condition = xml.find("<condition>Chez l'adulte</condition>");
  const auto action = xml.find("<action id=\"r1\"");
  const auto close = xml.find("</conditional>");
  ASSERT_NE(conditional, std::string::npos);
  EXPECT_LT(conditional, condition);
  EXPECT_LT(condition, action);
  EXPECT_LT(action, close);
  EXPECT_EQ(xml.find("<conditional", conditional + 1), std::string::npos);
}

TEST(EmitXmlTest, EscapesMarkup) {
  ScopeTree t;
  t.doc_id = "d&<";
  t.nodes = {Node("c1", SegmentKind::kCondition, "si a < b & c > d", "", 0)};
  const std::string xml = EmitXml(t);
  EXPECT_NE(xml.find("si a &lt; b &amp; c &gt; d"), std::string::npos);
  EXPECT_NE(xml.find("<documentId>d&amp;&lt;</documentId>"), std::string::npos);
  const auto back = ParseXml(xml);
  EXPECT_EQ(back.nodes[0].text, "si a < b & c > d");
  EXPECT_EQ(back.doc_id, "d&<");
}

TEST(EmitXmlTest, FixtureRoundTripAndDeterminism) {
  for (const char* name : {"f1.txt", "f2.txt"}) {
    const auto t = RunPipeline(ParsePlainText(ReadFile(testing::FixturePath(name))), {}).tree;
    const std::string xml = EmitXml(t);
    EXPECT_EQ(xml, EmitXml(t));
    EXPECT_TRUE(StructurallyEqual(ParseXml(xml), t)) << name;
    EXPECT_EQ(EmitXml(ParseXml(xml)), xml);
    EXPECT_EQ(xml.find('\r'), std::string::npos);
  }
}

TEST(ParseXmlTest, ActionWithChildrenIsASchemaError) {
  const std::string xml =
      "<guideline><identity><documentId>d</documentId><title/></identity>"
      "<knowledgeComponent><action id=\"r1\">x<conditional id=\"c1\"><condition>y</condition>"
      "</conditional></action></knowledgeComponent></guideline>";
  try {
    ParseXml(xml);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("conditional"), std::string::npos) << e.what();
  }
}

TEST(ParseXmlTest, UnknownElementIsASchemaError) {
  const std::string xml =
      "<guideline><identity><documentId>d</documentId></identity>"
      "<knowledgeComponent><decision/></knowledgeComponent></guideline>";
  try {
    ParseXml(xml);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("decision"), std::string::npos) << e.what();
  }
}

TEST(ParseXmlTest, MalformedXmlIsAnError) {
  EXPECT_THROW(ParseXml("<guideline><knowledgeComponent>"), Error);
  EXPECT_THROW(ParseXml(""), Error);
}

TEST(ParseXmlTest, HandWrittenMinimalFile) {
  const std::string xml = R"(<?xml version="1.0" encoding="UTF-8"?>
<guideline>
  <identity><documentId>hand</documentId><title>Angine</title></identity>
  <knowledgeComponent>
    <conditional id="c1"><condition>En cas d'allergie</condition>
      <action id="r1">les macrolides sont recommandés.</action>
    </conditional>
  </knowledgeComponent>
</guideline>
)";
  const auto t = ParseXml(xml);
  EXPECT_EQ(t.doc_id, "hand");
  EXPECT_EQ(t.title, "Angine");
  ASSERT_EQ(t.nodes.size(), 2u);
  EXPECT_EQ(t.nodes[0].id, "c1");
  EXPECT_EQ(t.nodes[0].kind, SegmentKind::kCondition);
  EXPECT_EQ(t.nodes[0].text, "En cas d'allergie");
  EXPECT_EQ(t.nodes[1].parent, "c1");
  EXPECT_EQ(t.nodes[1].text, "les macrolides sont recommandés.");
  EXPECT_TRUE(ValidateTree(t).empty());
}

TEST(ParseXmlTest, MetaPassesThroughIdentity) {
  ScopeTree t;
  t.doc_id = "d";
  t.meta = {{"source", "ANAES 2001"}, {"language", "fr"}};
  EXPECT_EQ(ParseXml(EmitXml(t)).meta, t.meta);
}

TEST(GemXmlPropertyTest, RandomTreesRoundTrip) {
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const ScopeTree t = testing::RandomTree(rng);
    ASSERT_TRUE(ValidateTree(t).empty());
    const std::string xml = EmitXml(t);
    const ScopeTree back = ParseXml(xml);
    ASSERT_TRUE(StructurallyEqual(back, t)) << xml;
    EXPECT_EQ(EmitXml(back), xml);
  }
}

}  // namespace
}  // namespace structure
