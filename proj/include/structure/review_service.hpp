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

// Expert review sessions: machine-proposed scope trees, corrected through an
// append-only log of overrides and finalized into GEM XML.
//
// Every mutation names the revision it was computed against. A stale
// revision is a conflict and leaves the session untouched; two writers racing
// on one revision therefore see exactly one success.

#ifndef STRUCTURE_REVIEW_SERVICE_HPP_
#define STRUCTURE_REVIEW_SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "structure/doc_model.hpp"
#include "structure/pipeline.hpp"
#include "structure/scope_engine.hpp"

namespace structure {

enum class OverrideKind { kReparent, kChangeKind, kMergeSegments, kSplitSegment, kAccept };

std::string_view OverrideKindName(OverrideKind kind);
OverrideKind OverrideKindFromName(std::string_view name);

struct Override {
  OverrideKind kind = OverrideKind::kAccept;
  std::string target;
  // reparent: the new parent condition, empty for the document root.
  std::string new_parent;
  // merge_segments: the segment folded into `target`.
  std::string other;
  // split_segment: byte offset in the target's text where the second part
  // begins.
  std::size_t at = 0;
  // change_kind: placement given to a recommendation turned condition.
  Placement placement = Placement::kDetached;
  std::string author;
  std::string timestamp;

  bool operator==(const Override&) const = default;
};

nlohmann::json OverrideToJson(const Override& o);
Override OverrideFromJson(const nlohmann::json& j);

// Pure: returns the edited tree or throws Error(kNotFound) for unknown ids,
// Error(kInvalidInput) for malformed arguments and Error(kRejected) when the
// result would violate a tree invariant.
ScopeTree ApplyOverride(const ScopeTree& tree, const Override& o);
ScopeTree ReplayOverrides(const ScopeTree& initial, const std::vector<Override>& log);

enum class SessionStatus { kDraft, kFinalized };
std::string_view SessionStatusName(SessionStatus status);
SessionStatus SessionStatusFromName(std::string_view name);

// Immutable snapshot; every accepted mutation publishes a new one.
struct SessionState {
  std::string session_id;
  std::uint64_t revision = 0;
  SessionStatus status = SessionStatus::kDraft;
  GuidelineDocument doc;
  ScopeTree initial_tree;
  ScopeTree tree;
  std::vector<Override> log;
  std::string export_xml;  // set once finalized
};

nlohmann::json SessionSummaryJson(const SessionState& s);
// Summary plus the tree with per-node explanations.
nlohmann::json SessionTreeJson(const SessionState& s);

struct IngestRequest {
  std::string content;
  InputFormat format = InputFormat::kText;
  std::string doc_id = "document";  // plain text only
  std::string title;                // plain text only
};

class ReviewStore {
 public:
  // With a store directory, sessions found there are reloaded by replaying
  // their override logs, and every mutation is persisted before it is
  // published. Without one the store lives in memory.
  explicit ReviewStore(PipelineConfig config,
                       std::optional<std::filesystem::path> dir = std::nullopt);

  std::shared_ptr<const SessionState> Ingest(const IngestRequest& request);
  std::vector<std::shared_ptr<const SessionState>> List() const;
  // Throws Error(kNotFound).
  std::shared_ptr<const SessionState> Get(const std::string& session_id) const;
  // Throws kNotFound, kConflict (stale revision, finalized session),
  // kRejected or kInvalidInput.
  std::shared_ptr<const SessionState> ApplyOverride(const std::string& session_id,
                                                    std::uint64_t expected_revision,
                                                    const Override& o);
  std::shared_ptr<const SessionState> Finalize(const std::string& session_id,
                                               std::uint64_t expected_revision);

  const PipelineConfig& config() const { return config_; }

 private:
  struct Entry {
    std::mutex write;
    std::shared_ptr<const SessionState> state;  // atomic_load / atomic_store
  };

  std::shared_ptr<Entry> Find(const std::string& session_id) const;
  void LoadAll();
  std::shared_ptr<const SessionState> LoadSession(const std::filesystem::path& dir) const;
  void PersistNew(const SessionState& s) const;
  void PersistOverride(const SessionState& s, const Override& o) const;
  void PersistSnapshot(const SessionState& s) const;

  PipelineConfig config_;
  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::map<std::string, std::uint64_t> next_suffix_;
};

}  // namespace structure

#endif  // STRUCTURE_REVIEW_SERVICE_HPP_
