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

// HTTP+JSON front end of the review store.
//
//   POST /documents                      ingest text or document JSON
//   GET  /documents                      list sessions
//   GET  /documents/{id}/tree            current tree with explanations
//   POST /documents/{id}/overrides       apply one override
//   POST /documents/{id}/finalize        freeze and emit GEM XML
//   GET  /documents/{id}/export.xml      GEM XML of the current tree

#ifndef STRUCTURE_HTTP_API_HPP_
#define STRUCTURE_HTTP_API_HPP_

#include "structure/error.hpp"
#include "structure/review_service.hpp"

namespace httplib {
class Server;
}

namespace structure {

int HttpStatusFor(ErrorKind kind);

// Routes hold a reference to `store`, which must outlive `server`.
void InstallRoutes(httplib::Server& server, ReviewStore& store);

}  // namespace structure

#endif  // STRUCTURE_HTTP_API_HPP_
