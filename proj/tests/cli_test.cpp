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

// Drives the built `structure` executable.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "generators.hpp"
#include "structure/gem_xml.hpp"
#include "structure/pipeline.hpp"
#include "temp_dir.hpp"

namespace structure {
namespace {

struct Run {
  int status;
  std::string out;
};

Run Cli(const std::string& args) {
  const std::string cmd = std::string(STRUCTURE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string Quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

TEST(CliTest, ParseBothFormats) {
  const auto text = Cli("parse --in " + Quote(testing::FixturePath("f1.txt")));
  ASSERT_EQ(text.status, 0) << text.out;
  const auto json = Cli("parse --in " + Quote(testing::FixturePath("f1.json")) + " --format json");
  ASSERT_EQ(json.status, 0) << json.out;
  auto a = nlohmann::json::parse(text.out);
  auto b = nlohmann::json::parse(json.out);
  a.erase("source_format");
  b.erase("source_format");
  EXPECT_EQ(a, b);
}

TEST(CliTest, SegmentWithLexicon) {
  const auto r = Cli("segment --in " + Quote(testing::FixturePath("f1.txt")) + " --lexicon " +
                     Quote(testing::SourceDir() / "data" / "lexicon" / "conditions_fr.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 9u);
}

TEST(CliTest, TreeThenEmitMatchesLibrary) {
  testing::TempDir dir;
  const auto tree = dir.path() / "tree.json";
  const auto xml = dir.path() / "doc.xml";
  ASSERT_EQ(Cli("tree --in " + Quote(testing::FixturePath("f1.txt")) + " --out " + Quote(tree))
                .status,
            0);
  ASSERT_EQ(Cli("emit --tree " + Quote(tree) + " --out " + Quote(xml)).status, 0);
  ParseOptions options;
  options.doc_id = "f1";
  const auto lib =
      RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt")), options), {}).tree;
  EXPECT_EQ(ReadFile(xml), EmitXml(lib));
}

TEST(CliTest, FeaturesEmitsOneRecordPerCouple) {
  const auto r = Cli("features --in " + Quote(testing::FixturePath("f1.txt")) + " --couples all");
  ASSERT_EQ(r.status, 0) << r.out;
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 9u);  // 6 + 2 + 1 couples in F1
  const auto first = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_TRUE(first["features"].contains("same_visual_position"));
}

TEST(CliTest, EvalOnBundledCorpus) {
  testing::TempDir dir;
  const auto report = dir.path() / "report.json";
  const auto r = Cli("eval --gold " + Quote(testing::CorpusDir()) + " --report " + Quote(report));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(ReadFile(report));
  EXPECT_EQ(j["documents"], 10);
  EXPECT_TRUE(j.contains("scope_accuracy_per_couple"));
}

TEST(CliTest, EvalAgainstPredictionDirectory) {
  testing::TempDir dir;
  for (const auto& e : std::filesystem::directory_iterator(testing::CorpusDir())) {
    if (e.path().extension() != ".txt") continue;
    const auto out = dir.path() / (DocIdFromPath(e.path()) + ".tree.json");
    ASSERT_EQ(Cli("tree --in " + Quote(e.path()) + " --out " + Quote(out)).status, 0);
  }
  const auto a = Cli("eval --gold " + Quote(testing::CorpusDir()));
  const auto b = Cli("eval --pred " + Quote(dir.path()) + " --gold " + Quote(testing::CorpusDir()));
  ASSERT_EQ(a.status, 0) << a.out;
  ASSERT_EQ(b.status, 0) << b.out;
  EXPECT_EQ(nlohmann::json::parse(a.out), nlohmann::json::parse(b.out));
}

TEST(CliTest, ErrorsExitNonZero) {
  testing::TempDir dir;
  const auto empty = dir.path() / "empty.txt";
  { std::ofstream(empty) << ""; }
  const auto r = Cli("parse --in " + Quote(empty));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("empty document"), std::string::npos);
  EXPECT_NE(Cli("parse").status, 0);
  EXPECT_NE(Cli("tree --in /no/such/file").status, 0);
}

}  // namespace
}  // namespace structure
