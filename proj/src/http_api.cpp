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

#include "httplib.h"
#include "structure/gem_xml.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kXml = "application/xml";

void SendJson(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJson);
}

void SendError(httplib::Response& res, int status, std::string_view kind,
               const std::string& message) {
  SendJson(res, status, {{"error", kind}, {"message", message}});
}

// Runs `fn`, mapping library errors onto HTTP statuses.
template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    SendError(res, HttpStatusFor(e.kind()), ErrorKindName(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    SendError(res, 422, ErrorKindName(ErrorKind::kInvalidInput), e.what());
  } catch (const std::exception& e) {
    SendError(res, 500, "internal", e.what());
  }
}

nlohmann::json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) throw Error(ErrorKind::kInvalidInput, "empty request body");
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput, std::string("malformed JSON body: ") + e.what());
  }
}

std::uint64_t ExpectedRevision(const nlohmann::json& body) {
  if (!body.is_object() || !body.contains("expected_revision") ||
      !body["expected_revision"].is_number_unsigned()) {
    throw SchemaError("/expected_revision", "must be a non-negative integer");
  }
  return body["expected_revision"].get<std::uint64_t>();
}

IngestRequest IngestFromRequest(const httplib::Request& req) {
  IngestRequest in;
  const std::string type = req.get_header_value("Content-Type");
  if (type.rfind(kJson, 0) != 0) {
    // Raw plain-text body; naming comes from the query string.
    in.content = req.body;
    in.format = InputFormat::kText;
    if (req.has_param("doc_id")) in.doc_id = req.get_param_value("doc_id");
    if (req.has_param("title")) in.title = req.get_param_value("title");
    if (text::Trim(in.content).empty()) {
      throw Error(ErrorKind::kInvalidInput, "empty document");
    }
    return in;
  }
  const nlohmann::json body = ParseBody(req);
  if (!body.is_object()) throw SchemaError("/", "must be an object");
  if (body.contains("document")) {
    in.format = InputFormat::kJson;
    in.content = body["document"].dump();
  } else if (body.contains("text") && body["text"].is_string()) {
    in.format = InputFormat::kText;
    in.content = body["text"].get<std::string>();
    if (body.contains("doc_id")) in.doc_id = body["doc_id"].get<std::string>();
    if (body.contains("title")) in.title = body["title"].get<std::string>();
  } else {
    throw SchemaError("/", "expected 'text' or 'document'");
  }
  return in;
}

}  // namespace

int HttpStatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kContract:
    case ErrorKind::kInconsistent:
    case ErrorKind::kRejected:
      return 422;
    case ErrorKind::kNotFound:
      return 404;
    case ErrorKind::kConflict:
      return 409;
    case ErrorKind::kIo:
      return 500;
  }
  return 500;
}

void InstallRoutes(httplib::Server& server, ReviewStore& store) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.status = 204;
  });

  server.Post("/documents", [&store](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      auto state = store.Ingest(IngestFromRequest(req));
      res.set_header("Location", "/documents/" + state->session_id + "/tree");
      SendJson(res, 201, SessionTreeJson(*state));
    });
  });

  server.Get("/documents", [&store](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& s : store.List()) list.push_back(SessionSummaryJson(*s));
      SendJson(res, 200, {{"documents", list}});
    });
  });

  server.Get(R"(/documents/([^/]+)/tree)",
             [&store](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] { SendJson(res, 200, SessionTreeJson(*store.Get(req.matches[1]))); });
             });

  server.Post(R"(/documents/([^/]+)/overrides)",
              [&store](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] {
                  const nlohmann::json body = ParseBody(req);
                  const std::uint64_t revision = ExpectedRevision(body);
                  auto state =
                      store.ApplyOverride(req.matches[1], revision, OverrideFromJson(body));
                  SendJson(res, 200, SessionTreeJson(*state));
                });
              });

  server.Post(R"(/documents/([^/]+)/finalize)",
              [&store](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] {
                  auto state = store.Finalize(req.matches[1], ExpectedRevision(ParseBody(req)));
                  res.status = 200;
                  res.set_header("X-Revision", std::to_string(state->revision));
                  res.set_content(state->export_xml, kXml);
                });
              });

  server.Get(R"(/documents/([^/]+)/export\.xml)",
             [&store](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] {
                 auto state = store.Get(req.matches[1]);
                 res.status = 200;
                 res.set_header("X-Status", std::string(SessionStatusName(state->status)));
                 res.set_content(state->status == SessionStatus::kFinalized
                                     ? state->export_xml
                                     : EmitXml(state->tree),
                                 kXml);
               });
             });
}

}  // namespace structure
