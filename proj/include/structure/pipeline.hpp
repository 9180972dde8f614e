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

// End-to-end pipeline shared by the CLI and the review service.

#ifndef STRUCTURE_PIPELINE_HPP_
#define STRUCTURE_PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "structure/doc_model.hpp"
#include "structure/lexicon.hpp"
#include "structure/scope_engine.hpp"
#include "structure/segmenter.hpp"

namespace structure {

struct PipelineConfig {
  TriggerLexicon triggers = TriggerLexicon::FrenchDefaults();
  RelationLexicons relations = RelationLexicons::FrenchDefaults();
  AbbreviationList abbreviations = AbbreviationList::FrenchDefaults();

  // Any path left empty keeps the built-in French default.
  static PipelineConfig Load(const std::optional<std::filesystem::path>& triggers,
                             const std::optional<std::filesystem::path>& relations,
                             const std::optional<std::filesystem::path>& abbreviations);
};

enum class InputFormat { kText, kJson };

InputFormat InputFormatFromName(std::string_view name);
// ".json" means structured input, anything else plain text.
InputFormat GuessInputFormat(const std::filesystem::path& path);

// `doc_id` and `title` only apply to plain text; structured input carries
// its own.
GuidelineDocument ParseInput(std::string_view content, InputFormat format,
                             const PipelineConfig& config,
                             const std::string& doc_id = "document",
                             const std::string& title = "");

struct PipelineResult {
  GuidelineDocument doc;
  std::vector<Segment> segments;
  ScopeTree tree;
};

PipelineResult RunPipeline(GuidelineDocument doc, const PipelineConfig& config);

// Derives a document id from a file name: the stem, restricted to
// [A-Za-z0-9_.-].
std::string DocIdFromPath(const std::filesystem::path& path);
std::string SanitizeId(std::string_view raw);

}  // namespace structure

#endif  // STRUCTURE_PIPELINE_HPP_
