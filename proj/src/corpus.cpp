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

#include "structure/corpus.hpp"

#include <algorithm>

#include "structure/error.hpp"

namespace structure {
namespace fs = std::filesystem;
namespace {

nlohmann::json ReadJson(const fs::path& path) {
  try {
    return nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput, path.string() + ": " + e.what());
  }
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

GoldDocument LoadGoldFile(const fs::path& gold_path, const PipelineConfig& config) {
  const nlohmann::json j = ReadJson(gold_path);
  if (!j.is_object() || !j.contains("source") || !j["source"].is_string()) {
    throw Error(ErrorKind::kInvalidInput, gold_path.string() + ": missing \"source\"");
  }
  const fs::path source = gold_path.parent_path() / j["source"].get<std::string>();
  GoldDocument out;
  out.gold_path = gold_path;
  out.doc = ParseInput(ReadFile(source), GuessInputFormat(source), config,
                       DocIdFromPath(source));
  ScopeTree tree = TreeFromJson(j);
  if (tree.doc_id != out.doc.doc_id) {
    throw Error(ErrorKind::kInvalidInput, gold_path.string() + ": doc_id " + tree.doc_id +
                                              " does not match source " + out.doc.doc_id);
  }
  const DocumentIndex index(out.doc);
  for (const auto& n : tree.nodes) {
    if (n.span.last >= index.size()) {
      throw Error(ErrorKind::kInvalidInput,
                  gold_path.string() + ": span of " + n.id + " is outside the document");
    }
  }
  out.gold = GoldAnnotation::FromTree(std::move(tree));
  return out;
}

std::vector<GoldDocument> LoadGoldDirectory(const fs::path& dir, const PipelineConfig& config) {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && EndsWith(e.path().filename().string(), ".gold.json")) {
      paths.push_back(e.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<GoldDocument> out;
  for (const auto& p : paths) out.push_back(LoadGoldFile(p, config));
  return out;
}

EvaluationReport EvaluateDirectories(const std::optional<fs::path>& pred_dir,
                                     const fs::path& gold_dir, const PipelineConfig& config) {
  const std::vector<GoldDocument> golds = LoadGoldDirectory(gold_dir, config);
  std::vector<std::vector<Segment>> predicted;
  predicted.reserve(golds.size());
  for (const auto& g : golds) {
    if (!pred_dir) {
      predicted.push_back(RunPipeline(g.doc, config).segments);
      continue;
    }
    std::optional<fs::path> found;
    for (const char* suffix : {".tree.json", ".json"}) {
      const fs::path candidate = *pred_dir / (g.doc.doc_id + suffix);
      if (fs::exists(candidate)) {
        found = candidate;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorKind::kNotFound, "no prediction for " + g.doc.doc_id + " in " +
                                            pred_dir->string());
    }
    predicted.push_back(SegmentsOf(TreeFromJson(ReadJson(*found))));
  }
  std::vector<EvaluationCase> cases;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    cases.push_back({&golds[i].doc, &golds[i].gold, &predicted[i]});
  }
  return EvaluateCorpus(cases, config.relations);
}

}  // namespace structure
