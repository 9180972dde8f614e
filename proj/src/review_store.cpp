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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include "structure/error.hpp"
#include "structure/gem_xml.hpp"
#include "structure/review_service.hpp"

namespace structure {
namespace fs = std::filesystem;
namespace {

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteAtomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot rename " + tmp.string() + ": " + ec.message());
}

nlohmann::json ParseJsonFile(const fs::path& path) {
  try {
    return nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kIo, path.string() + ": " + e.what());
  }
}

}  // namespace

std::string_view SessionStatusName(SessionStatus status) {
  return status == SessionStatus::kDraft ? "draft" : "finalized";
}

SessionStatus SessionStatusFromName(std::string_view name) {
  if (name == "draft") return SessionStatus::kDraft;
  if (name == "finalized") return SessionStatus::kFinalized;
  throw Error(ErrorKind::kInvalidInput, "unknown session status: " + std::string(name));
}

nlohmann::json SessionSummaryJson(const SessionState& s) {
  return {{"id", s.session_id},
          {"doc_id", s.doc.doc_id},
          {"title", s.tree.title},
          {"revision", s.revision},
          {"status", SessionStatusName(s.status)},
          {"segments", s.tree.nodes.size()}};
}

nlohmann::json SessionTreeJson(const SessionState& s) {
  nlohmann::json j = SessionSummaryJson(s);
  j["tree"] = TreeToJson(s.tree);
  nlohmann::json log = nlohmann::json::array();
  for (const auto& o : s.log) log.push_back(OverrideToJson(o));
  j["overrides"] = std::move(log);
  return j;
}

ReviewStore::ReviewStore(PipelineConfig config, std::optional<fs::path> dir)
    : config_(std::move(config)), dir_(std::move(dir)) {
  if (dir_) {
    std::error_code ec;
    fs::create_directories(*dir_, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create store " + dir_->string());
    LoadAll();
  }
}

std::shared_ptr<ReviewStore::Entry> ReviewStore::Find(const std::string& session_id) const {
  std::shared_lock lock(sessions_mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::kNotFound, "unknown document session: " + session_id);
  }
  return it->second;
}

std::shared_ptr<const SessionState> ReviewStore::Ingest(const IngestRequest& request) {
  GuidelineDocument doc =
      ParseInput(request.content, request.format, config_, request.doc_id, request.title);
  PipelineResult result = RunPipeline(std::move(doc), config_);

  auto state = std::make_shared<SessionState>();
  state->doc = std::move(result.doc);
  state->initial_tree = std::move(result.tree);
  state->tree = state->initial_tree;

  auto entry = std::make_shared<Entry>();
  std::unique_lock lock(sessions_mu_);
  const std::string base = SanitizeId(state->doc.doc_id);
  std::uint64_t& suffix = next_suffix_[base];
  do {
    state->session_id = base + "-" + std::to_string(++suffix);
  } while (sessions_.count(state->session_id) != 0);
  PersistNew(*state);
  entry->state = state;
  sessions_.emplace(state->session_id, entry);
  return state;
}

std::vector<std::shared_ptr<const SessionState>> ReviewStore::List() const {
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::shared_lock lock(sessions_mu_);
    for (const auto& [id, e] : sessions_) entries.push_back(e);
  }
  std::vector<std::shared_ptr<const SessionState>> out;
  for (const auto& e : entries) out.push_back(std::atomic_load(&e->state));
  return out;
}

std::shared_ptr<const SessionState> ReviewStore::Get(const std::string& session_id) const {
  return std::atomic_load(&Find(session_id)->state);
}

std::shared_ptr<const SessionState> ReviewStore::ApplyOverride(
    const std::string& session_id, std::uint64_t expected_revision, const Override& o) {
  auto entry = Find(session_id);
  std::lock_guard lock(entry->write);
  auto current = std::atomic_load(&entry->state);
  if (current->status == SessionStatus::kFinalized) {
    throw Error(ErrorKind::kConflict, "session " + session_id + " is finalized");
  }
  if (expected_revision != current->revision) {
    throw Error(ErrorKind::kConflict, "stale revision: expected " +
                                          std::to_string(expected_revision) + ", current " +
                                          std::to_string(current->revision));
  }
  Override stamped = o;
  if (stamped.timestamp.empty()) stamped.timestamp = UtcNow();
  ScopeTree tree = structure::ApplyOverride(current->tree, stamped);

  auto next = std::make_shared<SessionState>(*current);
  next->tree = std::move(tree);
  next->log.push_back(stamped);
  next->revision = current->revision + 1;
  PersistOverride(*next, stamped);
  std::atomic_store(&entry->state, std::shared_ptr<const SessionState>(next));
  return next;
}

std::shared_ptr<const SessionState> ReviewStore::Finalize(const std::string& session_id,
                                                          std::uint64_t expected_revision) {
  auto entry = Find(session_id);
  std::lock_guard lock(entry->write);
  auto current = std::atomic_load(&entry->state);
  if (current->status == SessionStatus::kFinalized) {
    throw Error(ErrorKind::kConflict, "session " + session_id + " is already finalized");
  }
  if (expected_revision != current->revision) {
    throw Error(ErrorKind::kConflict, "stale revision: expected " +
                                          std::to_string(expected_revision) + ", current " +
                                          std::to_string(current->revision));
  }
  auto next = std::make_shared<SessionState>(*current);
  next->status = SessionStatus::kFinalized;
  next->export_xml = EmitXml(next->tree);
  if (dir_) {
    WriteAtomically(*dir_ / next->session_id / "export.xml", next->export_xml);
    PersistSnapshot(*next);
  }
  std::atomic_store(&entry->state, std::shared_ptr<const SessionState>(next));
  return next;
}

void ReviewStore::PersistNew(const SessionState& s) const {
  if (!dir_) return;
  const fs::path dir = *dir_ / s.session_id;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string());
  WriteAtomically(dir / "document.json", DocumentToJson(s.doc).dump(2) + "\n");
  WriteAtomically(dir / "initial_tree.json", TreeToJson(s.initial_tree).dump(2) + "\n");
  WriteAtomically(dir / "overrides.jsonl", "");
  PersistSnapshot(s);
}

void ReviewStore::PersistOverride(const SessionState& s, const Override& o) const {
  if (!dir_) return;
  const fs::path log = *dir_ / s.session_id / "overrides.jsonl";
  {
    std::ofstream out(log, std::ios::binary | std::ios::app);
    out << OverrideToJson(o).dump() << "\n";
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "cannot append to " + log.string());
  }
  PersistSnapshot(s);
}

void ReviewStore::PersistSnapshot(const SessionState& s) const {
  if (!dir_) return;
  const nlohmann::json snap = {{"session_id", s.session_id},
                               {"revision", s.revision},
                               {"status", SessionStatusName(s.status)},
                               {"tree", TreeToJson(s.tree)}};
  WriteAtomically(*dir_ / s.session_id / "snapshot.json", snap.dump(2) + "\n");
}

std::shared_ptr<const SessionState> ReviewStore::LoadSession(const fs::path& dir) const {
  auto s = std::make_shared<SessionState>();
  s->session_id = dir.filename().string();
  s->doc = DocumentFromJson(ParseJsonFile(dir / "document.json"));
  s->initial_tree = TreeFromJson(ParseJsonFile(dir / "initial_tree.json"));
  std::ifstream in(dir / "overrides.jsonl", std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    s->log.push_back(OverrideFromJson(nlohmann::json::parse(line)));
  }
  // The log is authoritative; the snapshot only carries the status.
  s->tree = ReplayOverrides(s->initial_tree, s->log);
  s->revision = s->log.size();
  if (fs::exists(dir / "snapshot.json")) {
    const auto snap = ParseJsonFile(dir / "snapshot.json");
    s->status = SessionStatusFromName(snap.at("status").get<std::string>());
    if (snap.at("revision").get<std::uint64_t>() != s->revision ||
        !StructurallyEqual(TreeFromJson(snap.at("tree")), s->tree)) {
      std::cerr << "store: snapshot of " << s->session_id
                << " disagrees with its override log; using the log\n";
    }
  }
  if (s->status == SessionStatus::kFinalized) {
    s->export_xml = EmitXml(s->tree);
  }
  return s;
}

void ReviewStore::LoadAll() {
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(*dir_)) {
    if (e.is_directory() && fs::exists(e.path() / "document.json")) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    auto state = LoadSession(d);
    auto entry = std::make_shared<Entry>();
    entry->state = state;
    const std::string& id = state->session_id;
    const auto dash = id.rfind('-');
    if (dash != std::string::npos) {
      try {
        std::uint64_t& suffix = next_suffix_[id.substr(0, dash)];
        suffix = std::max<std::uint64_t>(suffix, std::stoull(id.substr(dash + 1)));
      } catch (const std::exception&) {
      }
    }
    sessions_.emplace(id, std::move(entry));
  }
}

}  // namespace structure
