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

// Document JSON schema:
//
//   {doc_id, title, sections: [{heading, blocks: [{kind, list_depth, marker,
//    sentences: [{raw_text, propositions: [{text}]}]}]}]}
//
// `title`, `heading`, `marker` and `raw_text` are optional. A missing raw_text
// is rebuilt by joining the propositions with ", ".

#include "structure/doc_model.hpp"

#include "structure/error.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

using nlohmann::json;

const json& Require(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw SchemaError(path + "/" + key, "missing");
  return obj.at(key);
}

std::string RequireString(const json& obj, const char* key, const std::string& path) {
  const json& v = Require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected string");
  return v.get<std::string>();
}

std::string OptionalString(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return "";
  if (!obj.at(key).is_string()) throw SchemaError(path + "/" + key, "expected string");
  return obj.at(key).get<std::string>();
}

const json& RequireArray(const json& obj, const char* key, const std::string& path,
                         bool non_empty) {
  const json& v = Require(obj, key, path);
  if (!v.is_array()) throw SchemaError(path + "/" + key, "expected array");
  if (non_empty && v.empty()) throw SchemaError(path + "/" + key, "must not be empty");
  return v;
}

void RequireObject(const json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path, "expected object");
}

Sentence ParseSentence(const json& j, const std::string& path) {
  RequireObject(j, path);
  Sentence sentence;
  const json& props = RequireArray(j, "propositions", path, true);
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < props.size(); ++i) {
    const std::string ppath = path + "/propositions/" + std::to_string(i);
    RequireObject(props[i], ppath);
    std::string t = RequireString(props[i], "text", ppath);
    if (!text::IsValidUtf8(t)) throw SchemaError(ppath + "/text", "encoding");
    if (text::NonSpace(t).empty()) throw SchemaError(ppath + "/text", "empty proposition");
    texts.push_back(t);
    sentence.propositions.push_back(Proposition{std::move(t), {}, false, false});
  }
  sentence.raw_text = OptionalString(j, "raw_text", path);
  if (sentence.raw_text.empty()) sentence.raw_text = text::Join(texts, ", ");
  if (!text::IsValidUtf8(sentence.raw_text)) throw SchemaError(path + "/raw_text", "encoding");
  if (!ReconstructsRawText(sentence)) {
    throw SchemaError(path + "/raw_text", "propositions do not reconstruct raw_text");
  }
  return sentence;
}

Block ParseBlock(const json& j, const std::string& path) {
  RequireObject(j, path);
  Block block;
  const std::string kind = RequireString(j, "kind", path);
  if (kind == "paragraph") {
    block.kind = BlockKind::kParagraph;
  } else if (kind == "list_item") {
    block.kind = BlockKind::kListItem;
  } else {
    throw SchemaError(path + "/kind", "expected paragraph or list_item");
  }
  if (j.contains("list_depth")) {
    const json& d = j.at("list_depth");
    if (!d.is_number_integer() || d.get<long long>() < 0) {
      throw SchemaError(path + "/list_depth", "expected integer >= 0");
    }
    block.list_depth = static_cast<int>(d.get<long long>());
  } else if (block.kind == BlockKind::kListItem) {
    throw SchemaError(path + "/list_depth", "missing");
  }
  if (block.kind == BlockKind::kListItem && block.list_depth == 0) {
    throw SchemaError(path + "/list_depth", "list_item requires list_depth > 0");
  }
  if (block.kind == BlockKind::kParagraph && block.list_depth != 0) {
    throw SchemaError(path + "/list_depth", "paragraph requires list_depth = 0");
  }
  block.marker = OptionalString(j, "marker", path);
  const json& sentences = RequireArray(j, "sentences", path, true);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    block.sentences.push_back(
        ParseSentence(sentences[i], path + "/sentences/" + std::to_string(i)));
  }
  return block;
}

}  // namespace

GuidelineDocument DocumentFromJson(const json& j) {
  RequireObject(j, "");
  GuidelineDocument doc;
  doc.doc_id = RequireString(j, "doc_id", "");
  doc.title = OptionalString(j, "title", "");
  doc.source_format = SourceFormat::kStructured;
  if (j.contains("source_format")) {
    const std::string f = OptionalString(j, "source_format", "");
    if (f == "plain_text") {
      doc.source_format = SourceFormat::kPlainText;
    } else if (f != "structured") {
      throw SchemaError("/source_format", "expected plain_text or structured");
    }
  }
  const json& sections = RequireArray(j, "sections", "", false);
  for (std::size_t s = 0; s < sections.size(); ++s) {
    const std::string path = "/sections/" + std::to_string(s);
    RequireObject(sections[s], path);
    Section section;
    section.heading = OptionalString(sections[s], "heading", path);
    const json& blocks = RequireArray(sections[s], "blocks", path, false);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      section.blocks.push_back(ParseBlock(blocks[b], path + "/blocks/" + std::to_string(b)));
    }
    doc.sections.push_back(std::move(section));
  }
  // Positions are derived from nesting, never read from input.
  for (std::size_t s = 0; s < doc.sections.size(); ++s) {
    auto& blocks = doc.sections[s].blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::size_t k = 0; k < blocks[b].sentences.size(); ++k) {
        auto& props = blocks[b].sentences[k].propositions;
        for (std::size_t p = 0; p < props.size(); ++p) {
          props[p].position = UnitPosition{s, b, k, p};
          props[p].starts_sentence = p == 0;
          props[p].starts_block = p == 0 && k == 0;
        }
      }
    }
  }
  return doc;
}

GuidelineDocument ParseStructuredInput(std::string_view input) {
  if (!text::IsValidUtf8(input)) throw Error(ErrorKind::kInvalidInput, "encoding");
  if (text::NonSpace(input).empty()) {
    throw Error(ErrorKind::kInvalidInput, "empty document");
  }
  json j;
  try {
    j = json::parse(input);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return DocumentFromJson(j);
}

json DocumentToJson(const GuidelineDocument& doc) {
  json sections = json::array();
  for (const auto& section : doc.sections) {
    json blocks = json::array();
    for (const auto& block : section.blocks) {
      json sentences = json::array();
      for (const auto& sentence : block.sentences) {
        json props = json::array();
        for (const auto& p : sentence.propositions) props.push_back({{"text", p.text}});
        sentences.push_back({{"raw_text", sentence.raw_text}, {"propositions", props}});
      }
      json b = {{"kind", BlockKindName(block.kind)},
                {"list_depth", block.list_depth},
                {"sentences", sentences}};
      if (!block.marker.empty()) b["marker"] = block.marker;
      blocks.push_back(std::move(b));
    }
    sections.push_back({{"heading", section.heading}, {"blocks", blocks}});
  }
  return {{"doc_id", doc.doc_id},
          {"title", doc.title},
          {"source_format",
           doc.source_format == SourceFormat::kPlainText ? "plain_text" : "structured"},
          {"sections", sections}};
}

}  // namespace structure
