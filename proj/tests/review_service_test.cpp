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

#include "structure/review_service.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "generators.hpp"
#include "temp_dir.hpp"
#include "structure/error.hpp"
#include "structure/gem_xml.hpp"

namespace structure {
namespace {

namespace fs = std::filesystem;

IngestRequest F1Request() {
  IngestRequest r;
  r.content = ReadFile(testing::FixturePath("f1.txt"));
  r.doc_id = "f1";
  return r;
}

Override Reparent(const std::string& target, const std::string& parent) {
  Override o;
  o.kind = OverrideKind::kReparent;
  o.target = target;
  o.new_parent = parent;
  o.author = "dr.martin";
  return o;
}

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

using testing::TempDir;

TEST(ApplyOverrideTest, ReparentLeafToSiblingCondition) {
  const auto t = RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt"))), {}).tree;
  const auto out = ApplyOverride(t, Reparent("r3", "c1"));
  EXPECT_EQ(FindNode(out, "r3")->parent, "c1");
  EXPECT_EQ(FindNode(out, "r3")->revised_by, "dr.martin");
  EXPECT_FALSE(FindNode(out, "r3")->fired_rule.has_value());
  EXPECT_TRUE(ValidateTree(out).empty());
  // The input is untouched.
  EXPECT_EQ(FindNode(t, "r3")->parent, "");
}

TEST(ApplyOverrideTest, CycleIsRejected) {
  const auto t = RunPipeline(ParsePlainText(
                                 "En cas de fièvre :\n- chez l'enfant, le paracétamol est "
                                 "recommandé ;\n- le repos est conseillé.\n"),
                             {})
                     .tree;
  ASSERT_EQ(FindNode(t, "c2")->parent, "c1");
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, Reparent("c1", "c2")); }), ErrorKind::kRejected);
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, Reparent("c1", "c1")); }), ErrorKind::kRejected);
}

TEST(ApplyOverrideTest, InvariantBreakingReparentsAreRejected) {
  const auto t = RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt"))), {}).tree;
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, Reparent("r1", "r2")); }), ErrorKind::kRejected);
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, Reparent("r6", "c2")); }), ErrorKind::kRejected);
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, Reparent("r1", "c2")); }), ErrorKind::kRejected);
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, Reparent("zz", "c1")); }), ErrorKind::kNotFound);
}

TEST(ApplyOverrideTest, ChangeKind) {
  const auto t = RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt"))), {}).tree;
  Override o;
  o.kind = OverrideKind::kChangeKind;
  o.target = "c1";
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, o); }), ErrorKind::kRejected);  // has children
  o.target = "r3";
  o.placement = Placement::kDetached;
  const auto out = ApplyOverride(t, o);
  EXPECT_EQ(FindNode(out, "r3")->kind, SegmentKind::kCondition);
  EXPECT_EQ(FindNode(out, "r3")->placement, Placement::kDetached);
  o.target = "r3";
  const auto back = ApplyOverride(out, o);
  EXPECT_EQ(FindNode(back, "r3")->kind, SegmentKind::kRecommendation);
}

TEST(ApplyOverrideTest, MergeAndSplit) {
  const auto t = RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt"))), {}).tree;
  Override merge;
  merge.kind = OverrideKind::kMergeSegments;
  merge.target = "r4";
  merge.other = "r5";
  const auto merged = ApplyOverride(t, merge);
  EXPECT_EQ(FindNode(merged, "r5"), nullptr);
  EXPECT_EQ(FindNode(merged, "r4")->text, "le traitement symptomatique est recommandé. Le repos est conseillé.");
  EXPECT_EQ(FindNode(merged, "r4")->span.last, FindNode(t, "r5")->span.last);
  merge.target = "r2";
  merge.other = "r4";  // different parents
  EXPECT_EQ(KindOf([&] { ApplyOverride(t, merge); }), ErrorKind::kRejected);

  Override split;
  split.kind = OverrideKind::kSplitSegment;
  split.target = "r4";
  const std::string text = FindNode(merged, "r4")->text;
  split.at = text.find("Le repos");
  const auto again = ApplyOverride(merged, split);
  EXPECT_EQ(FindNode(again, "r4")->text, "le traitement symptomatique est recommandé.");
  ASSERT_NE(FindNode(again, "r4.1"), nullptr);
  EXPECT_EQ(FindNode(again, "r4.1")->text, "Le repos est conseillé.");
  EXPECT_EQ(FindNode(again, "r4.1")->parent, "c2");
  split.at = 0;
  EXPECT_EQ(KindOf([&] { ApplyOverride(merged, split); }), ErrorKind::kInvalidInput);
}

TEST(ApplyOverrideTest, SplitConditionNarrowsScope) {
  const auto t = RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt"))), {}).tree;
  Override split;
  split.kind = OverrideKind::kSplitSegment;
  split.target = "c1";
  split.at = std::string("Chez le sujet").size();
  const auto out = ApplyOverride(t, split);
  EXPECT_EQ(FindNode(out, "c1.1")->parent, "c1");
  EXPECT_EQ(FindNode(out, "r1")->parent, "c1.1");
  EXPECT_TRUE(ValidateTree(out).empty());
}

TEST(ApplyOverrideTest, Accept) {
  const auto t = RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt"))), {}).tree;
  Override o;
  o.kind = OverrideKind::kAccept;
  o.target = "r1";
  o.author = "expert";
  const auto out = ApplyOverride(t, o);
  EXPECT_TRUE(FindNode(out, "r1")->accepted);
  EXPECT_NE(EmitXml(out).find("accepted=\"true\" revisedBy=\"expert\""), std::string::npos);
}

TEST(OverrideJsonTest, RoundTripAndSchema) {
  Override o = Reparent("r3", "");
  o.timestamp = "2026-01-01T00:00:00Z";
  EXPECT_EQ(OverrideFromJson(OverrideToJson(o)), o);
  EXPECT_TRUE(OverrideToJson(o)["new_parent"].is_null());
  EXPECT_THROW(OverrideFromJson({{"kind", "reparent"}, {"target", "r1"}}), Error);
  EXPECT_THROW(OverrideFromJson({{"kind", "delete"}, {"target", "r1"}}), Error);
  EXPECT_THROW(OverrideFromJson({{"kind", "split_segment"}, {"target", "r1"}, {"at", -3}}), Error);
}

TEST(ReviewStoreTest, IngestMatchesBatchPipeline) {
  ReviewStore store(PipelineConfig{});
  const auto s = store.Ingest(F1Request());
  EXPECT_EQ(s->revision, 0u);
  EXPECT_EQ(s->status, SessionStatus::kDraft);
  EXPECT_EQ(s->session_id, "f1-1");
  ParseOptions options;
  options.doc_id = "f1";
  const auto batch =
      RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt")), options), {}).tree;
  EXPECT_EQ(TreeToJson(s->tree), TreeToJson(batch));
}

TEST(ReviewStoreTest, EmptyBodyIsAnIngestionError) {
  ReviewStore store(PipelineConfig{});
  IngestRequest r;
  EXPECT_EQ(KindOf([&] { store.Ingest(r); }), ErrorKind::kInvalidInput);
  EXPECT_TRUE(store.List().empty());
}

TEST(ReviewStoreTest, ReingestCreatesANewIdenticalSession) {
  ReviewStore store(PipelineConfig{});
  const auto a = store.Ingest(F1Request());
  const auto b = store.Ingest(F1Request());
  EXPECT_NE(a->session_id, b->session_id);
  EXPECT_EQ(TreeToJson(a->tree), TreeToJson(b->tree));
  EXPECT_EQ(store.List().size(), 2u);
}

TEST(ReviewStoreTest, RevisionsAndConflicts) {
  ReviewStore store(PipelineConfig{});
  const std::string id = store.Ingest(F1Request())->session_id;
  const auto s1 = store.ApplyOverride(id, 0, Reparent("r3", "c1"));
  EXPECT_EQ(s1->revision, 1u);
  EXPECT_EQ(FindNode(s1->tree, "r3")->parent, "c1");
  EXPECT_EQ(KindOf([&] { store.ApplyOverride(id, 0, Reparent("r3", "")); }),
            ErrorKind::kConflict);
  EXPECT_EQ(KindOf([&] { store.ApplyOverride(id, 1, Reparent("c1", "c1")); }),
            ErrorKind::kRejected);
  EXPECT_EQ(store.Get(id)->revision, 1u);
  const auto s2 = store.ApplyOverride(id, 1, Reparent("r3", ""));
  EXPECT_EQ(s2->revision, 2u);
  EXPECT_EQ(s2->log.size(), 2u);
  EXPECT_FALSE(s2->log[0].timestamp.empty());
  EXPECT_EQ(KindOf([&] { store.Get("nope"); }), ErrorKind::kNotFound);
}

TEST(ReviewStoreTest, FinalizeFreezesTheSession) {
  ReviewStore store(PipelineConfig{});
  const auto s = store.Ingest(F1Request());
  EXPECT_EQ(KindOf([&] { store.Finalize(s->session_id, 3); }), ErrorKind::kConflict);
  const auto f = store.Finalize(s->session_id, 0);
  EXPECT_EQ(f->status, SessionStatus::kFinalized);
  EXPECT_EQ(f->export_xml, EmitXml(s->tree));
  EXPECT_EQ(KindOf([&] { store.ApplyOverride(s->session_id, 0, Reparent("r3", "c1")); }),
            ErrorKind::kConflict);
  EXPECT_EQ(KindOf([&] { store.Finalize(s->session_id, 0); }), ErrorKind::kConflict);
}

TEST(ReviewStoreTest, FinalizeAfterReparentReflectsTheEdit) {
  ReviewStore store(PipelineConfig{});
  const std::string id = store.Ingest(F1Request())->session_id;
  store.ApplyOverride(id, 0, Reparent("r3", "c1"));
  const auto f = store.Finalize(id, 1);
  const auto parsed = ParseXml(f->export_xml);
  EXPECT_EQ(FindNode(parsed, "r3")->parent, "c1");
  EXPECT_EQ(FindNode(parsed, "r3")->revised_by, "dr.martin");
}

TEST(ReviewStoreTest, PersistsAndReplays) {
  TempDir dir;
  std::string id;
  ScopeTree expected;
  {
    ReviewStore store(PipelineConfig{}, dir.path());
    id = store.Ingest(F1Request())->session_id;
    store.ApplyOverride(id, 0, Reparent("r3", "c1"));
    Override accept;
    accept.kind = OverrideKind::kAccept;
    accept.target = "c2";
    expected = store.ApplyOverride(id, 1, accept)->tree;
    store.Finalize(id, 2);
  }
  for (const char* f : {"document.json", "initial_tree.json", "overrides.jsonl", "snapshot.json",
                        "export.xml"}) {
    EXPECT_TRUE(fs::exists(dir.path() / id / f)) << f;
  }
  ReviewStore reloaded(PipelineConfig{}, dir.path());
  const auto s = reloaded.Get(id);
  EXPECT_EQ(s->revision, 2u);
  EXPECT_EQ(s->status, SessionStatus::kFinalized);
  EXPECT_EQ(TreeToJson(s->tree), TreeToJson(expected));
  EXPECT_EQ(s->export_xml, ReadFile(dir.path() / id / "export.xml"));
  EXPECT_EQ(TreeToJson(ReplayOverrides(s->initial_tree, s->log)), TreeToJson(s->tree));
  // New sessions do not reuse ids after a restart.
  EXPECT_EQ(reloaded.Ingest(F1Request())->session_id, "f1-2");
}

TEST(ReviewStoreTest, RacingWritersHaveExactlyOneWinner) {
  ReviewStore store(PipelineConfig{});
  for (int round = 0; round < 20; ++round) {
    const std::string id = store.Ingest(F1Request())->session_id;
    std::atomic<int> wins{0};
    std::atomic<int> conflicts{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        try {
          store.ApplyOverride(id, 0, Reparent("r3", t % 2 ? "c1" : ""));
          ++wins;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::kConflict) ++conflicts;
        }
      });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(wins.load(), 1);
    EXPECT_EQ(conflicts.load(), 3);
    EXPECT_EQ(store.Get(id)->revision, 1u);
  }
}

TEST(ReviewStoreTest, StructuredIngest) {
  ReviewStore store(PipelineConfig{});
  IngestRequest r;
  r.format = InputFormat::kJson;
  r.content = ReadFile(testing::FixturePath("f1.json"));
  const auto s = store.Ingest(r);
  EXPECT_EQ(s->doc.doc_id, "f1");
  EXPECT_EQ(s->tree.nodes.size(), 9u);
}

}  // namespace
}  // namespace structure
