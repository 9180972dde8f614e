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

#include "structure/pipeline.hpp"

#include "structure/error.hpp"

namespace structure {

PipelineConfig PipelineConfig::Load(
    const std::optional<std::filesystem::path>& triggers,
    const std::optional<std::filesystem::path>& relations,
    const std::optional<std::filesystem::path>& abbreviations) {
  PipelineConfig config;
  auto load_json = [](const std::filesystem::path& p) {
    try {
      return nlohmann::json::parse(ReadFile(p));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::kInvalidInput, p.string() + ": " + e.what());
    }
  };
  if (triggers && !triggers->empty()) {
    config.triggers = TriggerLexicon::FromJson(load_json(*triggers));
  }
  if (relations && !relations->empty()) {
    config.relations = RelationLexicons::FromJson(load_json(*relations));
  }
  if (abbreviations && !abbreviations->empty()) {
    config.abbreviations = AbbreviationList::FromText(ReadFile(*abbreviations));
  }
  return config;
}

InputFormat InputFormatFromName(std::string_view name) {
  if (name == "text") return InputFormat::kText;
  if (name == "json") return InputFormat::kJson;
  throw Error(ErrorKind::kInvalidInput, "unknown input format: " + std::string(name));
}

InputFormat GuessInputFormat(const std::filesystem::path& path) {
  return path.extension() == ".json" ? InputFormat::kJson : InputFormat::kText;
}

GuidelineDocument ParseInput(std::string_view content, InputFormat format,
                             const PipelineConfig& config, const std::string& doc_id,
                             const std::string& title) {
  if (format == InputFormat::kJson) return ParseStructuredInput(content);
  ParseOptions options;
  options.doc_id = doc_id;
  options.title = title;
  options.lexicon = config.triggers;
  options.abbreviations = config.abbreviations;
  return ParsePlainText(content, options);
}

PipelineResult RunPipeline(GuidelineDocument doc, const PipelineConfig& config) {
  PipelineResult result;
  result.doc = std::move(doc);
  const DocumentIndex index(result.doc);
  result.segments = DetectSegments(result.doc, config.triggers);
  result.tree =
      BuildScopeTree(index, result.segments, MakeDecisionFn(index, config.relations));
  return result;
}

std::string SanitizeId(std::string_view raw) {
  std::string out;
  for (char ch : raw) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_' || ch == '-' || ch == '.';
    out.push_back(ok ? ch : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "document";
  return out;
}

std::string DocIdFromPath(const std::filesystem::path& path) {
  std::string stem = path.filename().string();
  for (const char* suffix : {".gold.json", ".tree.json", ".json", ".txt"}) {
    const std::string s(suffix);
    if (stem.size() > s.size() && stem.compare(stem.size() - s.size(), s.size(), s) == 0) {
      stem.resize(stem.size() - s.size());
      break;
    }
  }
  return SanitizeId(stem);
}

}  // namespace structure
