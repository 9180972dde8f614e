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

#include "structure/http_api.hpp"

#include <gtest/gtest.h>

#include <thread>

#include "generators.hpp"
#include "httplib.h"
#include "structure/gem_xml.hpp"
#include "temp_dir.hpp"

namespace structure {
namespace {

// A review service on an ephemeral local port.
class ServiceFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    store_ = std::make_unique<ReviewStore>(PipelineConfig{}, dir_.path());
    InstallRoutes(server_, *store_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  httplib::Client Client() const { return httplib::Client("127.0.0.1", port_); }

  nlohmann::json PostJson(const std::string& path, const nlohmann::json& body, int expect) {
    auto res = Client().Post(path, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << res->body;
    return res->get_header_value("Content-Type") == "application/json"
               ? nlohmann::json::parse(res->body)
               : nlohmann::json(res->body);
  }

  nlohmann::json GetJson(const std::string& path, int expect = 200) {
    auto res = Client().Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << res->body;
    return nlohmann::json::parse(res->body);
  }

  std::string IngestF1() {
    const auto j = PostJson("/documents",
                            {{"text", ReadFile(testing::FixturePath("f1.txt"))}, {"doc_id", "f1"}},
                            201);
    return j.value("id", "");
  }

  nlohmann::json Reparent(const std::string& id, std::uint64_t rev, const std::string& target,
                          const std::string& parent, int expect) {
    return PostJson("/documents/" + id + "/overrides",
                    {{"kind", "reparent"},
                     {"target", target},
                     {"new_parent", parent.empty() ? nlohmann::json() : nlohmann::json(parent)},
                     {"author", "expert"},
                     {"expected_revision", rev}},
                    expect);
  }

  testing::TempDir dir_;
  std::unique_ptr<ReviewStore> store_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(ServiceFixture, IngestListAndTree) {
  const std::string id = IngestF1();
  ASSERT_EQ(id, "f1-1");
  const auto list = GetJson("/documents");
  ASSERT_EQ(list["documents"].size(), 1u);
  EXPECT_EQ(list["documents"][0]["revision"], 0);
  const auto tree = GetJson("/documents/" + id + "/tree");
  EXPECT_EQ(tree["revision"], 0);
  EXPECT_EQ(tree["status"], "draft");
  for (const auto& n : tree["tree"]["nodes"]) {
    if (!n["parent"].is_null()) EXPECT_FALSE(n["explanation"].empty()) << n["id"];
    EXPECT_TRUE(n.contains("fired_rule"));
    EXPECT_TRUE(n.contains("confidence"));
  }
  GetJson("/documents/missing/tree", 404);
}

TEST_F(ServiceFixture, PlainTextBody) {
  auto res = Client().Post("/documents?doc_id=plain", "Le repos est conseillé.", "text/plain");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);
  EXPECT_EQ(nlohmann::json::parse(res->body)["id"], "plain-1");
}

TEST_F(ServiceFixture, IngestErrors) {
  auto res = Client().Post("/documents", "", "text/plain");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 422);
  res = Client().Post("/documents", "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 422);
  PostJson("/documents", {{"document", {{"doc_id", "x"}}}}, 422);
  PostJson("/documents", {{"text", "   "}}, 422);
}

TEST_F(ServiceFixture, OverrideLifecycle) {
  const std::string id = IngestF1();
  auto j = Reparent(id, 0, "r3", "c1", 200);
  EXPECT_EQ(j["revision"], 1);
  EXPECT_EQ(GetJson("/documents/" + id + "/tree")["revision"], 1);
  j = Reparent(id, 0, "r3", "", 409);
  EXPECT_EQ(j["error"], "conflict");
  j = Reparent(id, 1, "c1", "c1", 422);
  EXPECT_EQ(j["error"], "rejected");
  Reparent(id, 1, "zz", "c1", 404);
  PostJson("/documents/" + id + "/overrides", {{"kind", "reparent"}, {"target", "r3"}}, 422);
  Reparent("nope-1", 0, "r3", "c1", 404);
}

TEST_F(ServiceFixture, FinalizeAndExport) {
  const std::string id = IngestF1();
  Reparent(id, 0, "r3", "c1", 200);
  auto draft = Client().Get("/documents/" + id + "/export.xml");
  ASSERT_TRUE(draft);
  EXPECT_EQ(draft->get_header_value("X-Status"), "draft");
  PostJson("/documents/" + id + "/finalize", {{"expected_revision", 0}}, 409);
  auto res = Client().Post("/documents/" + id + "/finalize",
                           nlohmann::json{{"expected_revision", 1}}.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/xml");
  EXPECT_EQ(FindNode(ParseXml(res->body), "r3")->parent, "c1");
  auto exported = Client().Get("/documents/" + id + "/export.xml");
  ASSERT_TRUE(exported);
  EXPECT_EQ(exported->body, res->body);
  EXPECT_EQ(exported->get_header_value("X-Status"), "finalized");
  Reparent(id, 1, "r3", "", 409);
  PostJson("/documents/" + id + "/finalize", {{"expected_revision", 1}}, 409);
}

TEST_F(ServiceFixture, UntouchedExportMatchesBatchEmission) {
  const std::string id = IngestF1();
  auto res = Client().Post("/documents/" + id + "/finalize",
                           nlohmann::json{{"expected_revision", 0}}.dump(), "application/json");
  ASSERT_TRUE(res);
  ParseOptions options;
  options.doc_id = "f1";
  const auto batch =
      RunPipeline(ParsePlainText(ReadFile(testing::FixturePath("f1.txt")), options), {}).tree;
  EXPECT_EQ(res->body, EmitXml(batch));
}

TEST_F(ServiceFixture, ConcurrentClientsHaveOneWinner) {
  const std::string id = IngestF1();
  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> clients;
  for (int i = 0; i < 4; ++i) {
    clients.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port_);
      const nlohmann::json body = {{"kind", "reparent"},
                                   {"target", "r3"},
                                   {"new_parent", i % 2 ? nlohmann::json("c1") : nlohmann::json()},
                                   {"expected_revision", 0}};
      auto res = c.Post("/documents/" + id + "/overrides", body.dump(), "application/json");
      if (res && res->status == 200) ++ok;
      if (res && res->status == 409) ++conflict;
    });
  }
  for (auto& t : clients) t.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflict.load(), 3);
}

}  // namespace
}  // namespace structure
