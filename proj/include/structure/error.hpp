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

#ifndef STRUCTURE_ERROR_HPP_
#define STRUCTURE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace structure {

// Broad failure classes. The HTTP layer maps these onto status codes, the CLI
// onto exit codes.
enum class ErrorKind {
  kInvalidInput,    // empty document, encoding, schema violations
  kContract,        // caller broke an operation precondition
  kInconsistent,    // segmentation or tree data contradicts itself
  kNotFound,
  kConflict,        // stale revision or finalized session
  kRejected,        // override would break a tree invariant
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

std::string_view ErrorKindName(ErrorKind kind);

// Shorthand for schema violations: "schema: <path>: <what>".
Error SchemaError(std::string_view path, std::string_view what);

}  // namespace structure

#endif  // STRUCTURE_ERROR_HPP_
