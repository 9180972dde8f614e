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

#include "structure/error.hpp"

namespace structure {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid_input";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kInconsistent: return "inconsistent";
    case ErrorKind::kNotFound: return "not_found";
    case ErrorKind::kConflict: return "conflict";
    case ErrorKind::kRejected: return "rejected";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error SchemaError(std::string_view path, std::string_view what) {
  std::string message = "schema: ";
  message += path.empty() ? std::string_view("/") : path;
  message += ": ";
  message += what;
  return Error(ErrorKind::kInvalidInput, message);
}

}  // namespace structure
