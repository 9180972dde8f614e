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

// Annotated corpora on disk: gold files and their source documents.
//
// A gold file is a tree JSON document with one extra top-level key,
// "source", naming the annotated document relative to the gold file.

#ifndef STRUCTURE_CORPUS_HPP_
#define STRUCTURE_CORPUS_HPP_

#include <filesystem>
#include <optional>
#include <vector>

#include "structure/evaluation.hpp"
#include "structure/pipeline.hpp"

namespace structure {

struct GoldDocument {
  std::filesystem::path gold_path;
  GuidelineDocument doc;
  GoldAnnotation gold;
};

// Throws Error(kInvalidInput) when the source does not parse or its doc id
// differs from the tree's.
GoldDocument LoadGoldFile(const std::filesystem::path& gold_path, const PipelineConfig& config);

// Every "*.gold.json" in `dir`, sorted by file name.
std::vector<GoldDocument> LoadGoldDirectory(const std::filesystem::path& dir,
                                            const PipelineConfig& config);

// Predicted trees come from `pred_dir` ("<doc_id>.tree.json" or
// "<doc_id>.json"); without one the pipeline runs on each source.
EvaluationReport EvaluateDirectories(const std::optional<std::filesystem::path>& pred_dir,
                                     const std::filesystem::path& gold_dir,
                                     const PipelineConfig& config);

}  // namespace structure

#endif  // STRUCTURE_CORPUS_HPP_
