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

// Material text structure of a guideline: sections, blocks (paragraphs and
// list items), sentences and propositions. Propositions are the leaf units
// that segments are anchored on.

#ifndef STRUCTURE_DOC_MODEL_HPP_
#define STRUCTURE_DOC_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "structure/lexicon.hpp"

namespace structure {

struct UnitPosition {
  std::size_t section = 0;
  std::size_t block = 0;
  std::size_t sentence = 0;
  std::size_t proposition = 0;

  auto operator<=>(const UnitPosition&) const = default;
};

struct Proposition {
  std::string text;
  UnitPosition position;
  bool starts_sentence = false;
  bool starts_block = false;

  bool operator==(const Proposition&) const = default;
};

struct Sentence {
  std::string raw_text;
  std::vector<Proposition> propositions;

  bool operator==(const Sentence&) const = default;
};

enum class BlockKind { kParagraph, kListItem };

std::string_view BlockKindName(BlockKind kind);

struct Block {
  BlockKind kind = BlockKind::kParagraph;
  int list_depth = 0;
  // Bullet or numbering as written ("-", "2)"); empty for paragraphs.
  std::string marker;
  std::vector<Sentence> sentences;

  bool operator==(const Block&) const = default;
};

struct Section {
  std::string heading;
  std::vector<Block> blocks;

  bool operator==(const Section&) const = default;
};

enum class SourceFormat { kPlainText, kStructured };

struct GuidelineDocument {
  std::string doc_id;
  std::string title;
  std::vector<Section> sections;
  SourceFormat source_format = SourceFormat::kStructured;

  bool operator==(const GuidelineDocument&) const = default;
};

struct ParseOptions {
  std::string doc_id = "document";
  // Defaults to the first section heading when empty.
  std::string title;
  TriggerLexicon lexicon = TriggerLexicon::FrenchDefaults();
  AbbreviationList abbreviations = AbbreviationList::FrenchDefaults();
};

// Heuristic ingestion of plain UTF-8 text. Throws Error(kInvalidInput) with
// "empty document" or "encoding".
GuidelineDocument ParsePlainText(std::string_view input,
                                 const ParseOptions& options = {});

// Exact ingestion from the document JSON schema. Throws a schema Error naming
// the offending path.
GuidelineDocument ParseStructuredInput(std::string_view input);
GuidelineDocument DocumentFromJson(const nlohmann::json& j);
nlohmann::json DocumentToJson(const GuidelineDocument& doc);

std::vector<Proposition> UnitsInOrder(const GuidelineDocument& doc);

// Reassembles headings, list markers and sentence texts, one block per line.
std::string RenderPlainText(const GuidelineDocument& doc);

// Sentence splitting and proposition splitting, exposed for testing.
std::vector<std::string> SplitSentences(std::string_view block_text,
                                        const AbbreviationList& abbreviations);
std::vector<std::string> SplitPropositions(std::string_view sentence,
                                           const TriggerLexicon& lexicon);

// True when the proposition texts, joined by optional commas, account for
// every non-whitespace character of raw_text.
bool ReconstructsRawText(const Sentence& sentence);

// Flattened, index-addressable view over a document. Holds a reference: the
// document must outlive the index.
class DocumentIndex {
 public:
  explicit DocumentIndex(const GuidelineDocument& doc);

  const GuidelineDocument& document() const { return *doc_; }

  std::size_t size() const { return units_.size(); }
  const Proposition& proposition(std::size_t i) const { return *units_[i].prop; }

  // Ordinals are global, in document order.
  std::size_t sentence_of(std::size_t i) const { return units_[i].sentence; }
  std::size_t block_of(std::size_t i) const { return units_[i].block; }
  std::size_t section_of(std::size_t i) const { return units_[i].section; }

  std::size_t sentence_count() const { return sentences_.size(); }
  const Sentence& sentence(std::size_t ordinal) const { return *sentences_[ordinal].sentence; }
  std::size_t sentence_first_unit(std::size_t ordinal) const { return sentences_[ordinal].first; }
  std::size_t sentence_last_unit(std::size_t ordinal) const { return sentences_[ordinal].last; }
  std::size_t sentence_block(std::size_t ordinal) const { return sentences_[ordinal].block; }

  std::size_t block_count() const { return blocks_.size(); }
  const Block& block(std::size_t ordinal) const { return *blocks_[ordinal].block; }
  std::size_t block_section(std::size_t ordinal) const { return blocks_[ordinal].section; }
  std::size_t block_first_sentence(std::size_t ordinal) const { return blocks_[ordinal].first_sentence; }
  std::size_t block_last_sentence(std::size_t ordinal) const { return blocks_[ordinal].last_sentence; }

 private:
  struct UnitEntry {
    const Proposition* prop;
    std::size_t sentence;
    std::size_t block;
    std::size_t section;
  };
  struct SentenceEntry {
    const Sentence* sentence;
    std::size_t first;
    std::size_t last;
    std::size_t block;
  };
  struct BlockEntry {
    const Block* block;
    std::size_t section;
    std::size_t first_sentence;
    std::size_t last_sentence;  // first_sentence - 1 wraps for empty blocks
  };

  const GuidelineDocument* doc_;
  std::vector<UnitEntry> units_;
  std::vector<SentenceEntry> sentences_;
  std::vector<BlockEntry> blocks_;
};

}  // namespace structure

#endif  // STRUCTURE_DOC_MODEL_HPP_
