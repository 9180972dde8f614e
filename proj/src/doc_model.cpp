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

#include "structure/doc_model.hpp"

#include <optional>

#include "structure/error.hpp"
#include "structure/text.hpp"

namespace structure {
namespace {

struct ListMarker {
  int depth = 0;
  std::string marker;
  std::string rest;
};

// Recognizes "- x", "* x", "• x", "3. x" and "3) x" with indentation-derived
// depth: two spaces or one tab per level, top level is depth 1.
std::optional<ListMarker> MatchListMarker(std::string_view line) {
  std::size_t i = 0;
  int spaces = 0;
  int tabs = 0;
  for (; i < line.size() && (line[i] == ' ' || line[i] == '\t'); ++i) {
    line[i] == '\t' ? ++tabs : ++spaces;
  }
  const std::string_view body = line.substr(i);
  std::size_t marker_len = 0;
  if (!body.empty() && (body[0] == '-' || body[0] == '*')) {
    marker_len = 1;
  } else if (body.starts_with("\xE2\x80\xA2")) {  // U+2022 bullet
    marker_len = 3;
  } else {
    std::size_t d = 0;
    while (d < body.size() && body[d] >= '0' && body[d] <= '9') ++d;
    if (d > 0 && d < body.size() && (body[d] == '.' || body[d] == ')')) {
      marker_len = d + 1;
    }
  }
  if (marker_len == 0 || marker_len >= body.size()) return std::nullopt;
  if (body[marker_len] != ' ' && body[marker_len] != '\t') return std::nullopt;
  std::string rest = text::Trim(body.substr(marker_len));
  if (rest.empty()) return std::nullopt;
  return ListMarker{1 + tabs + spaces / 2, std::string(body.substr(0, marker_len)),
                    std::move(rest)};
}

bool IsBlank(std::string_view line) { return text::Trim(line).empty(); }

bool IsAllCaps(std::string_view line) {
  int upper = 0;
  for (char32_t c : text::Decode(line)) {
    if (!text::IsWordChar(c) || (c >= U'0' && c <= U'9')) continue;
    if (text::ToLower(c) != c) {
      ++upper;
    } else if ((c >= U'a' && c <= U'z') || (c >= 0xDF && c <= 0xFF)) {
      return false;
    }
  }
  return upper >= 2;
}

// A paragraph-initial line becomes a section heading when it is written in
// capitals, or ends with ':' without introducing a list (a ':' line followed
// by list items is an introducer sentence and stays in the text).
bool IsHeading(const std::vector<std::string>& lines, std::size_t i) {
  const std::string line = text::Trim(lines[i]);
  if (IsAllCaps(line)) return true;
  if (line.empty() || line.back() != ':') return false;
  for (std::size_t j = i + 1; j < lines.size(); ++j) {
    if (IsBlank(lines[j])) continue;
    return !MatchListMarker(lines[j]).has_value();
  }
  return true;
}

void AssignPositions(GuidelineDocument& doc) {
  for (std::size_t s = 0; s < doc.sections.size(); ++s) {
    auto& blocks = doc.sections[s].blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto& sentences = blocks[b].sentences;
      for (std::size_t k = 0; k < sentences.size(); ++k) {
        auto& props = sentences[k].propositions;
        for (std::size_t p = 0; p < props.size(); ++p) {
          props[p].position = UnitPosition{s, b, k, p};
          props[p].starts_sentence = p == 0;
          props[p].starts_block = p == 0 && k == 0;
        }
      }
    }
  }
}

struct PendingBlock {
  BlockKind kind = BlockKind::kParagraph;
  int depth = 0;
  std::string marker;
  std::vector<std::string> lines;
};

}  // namespace

std::string_view BlockKindName(BlockKind kind) {
  return kind == BlockKind::kParagraph ? "paragraph" : "list_item";
}

std::vector<std::string> SplitSentences(std::string_view block_text,
                                        const AbbreviationList& abbreviations) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string sentence = text::Trim(block_text.substr(start, end - start));
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
    start = end;
  };
  for (std::size_t i = 0; i < block_text.size(); ++i) {
    const char c = block_text[i];
    if (c != '.' && c != '!' && c != '?' && c != ';') continue;
    const bool at_end = i + 1 == block_text.size();
    const bool then_space =
        !at_end && (block_text[i + 1] == ' ' || block_text[i + 1] == '\t' ||
                    block_text[i + 1] == '\n');
    if (!at_end && !then_space) continue;
    if (c == '.') {
      std::size_t w = i;
      while (w > start && block_text[w - 1] != ' ' && block_text[w - 1] != '\t' &&
             block_text[w - 1] != '(') {
        --w;
      }
      if (w < i && abbreviations.Contains(block_text.substr(w, i - w))) continue;
    }
    emit(i + 1);
  }
  emit(block_text.size());
  return sentences;
}

std::vector<std::string> SplitPropositions(std::string_view sentence,
                                           const TriggerLexicon& lexicon) {
  const std::vector<text::Token> tokens = text::Tokenize(sentence);
  const auto match = FindConditionMarker(tokens, lexicon, /*sentence_initial=*/true);
  if (match && match->token == 0) {
    const std::size_t marker_end = tokens[match->length - 1].end;
    const std::size_t comma = sentence.find(',', marker_end);
    if (comma != std::string_view::npos) {
      std::string head = text::Trim(sentence.substr(0, comma));
      std::string tail = text::Trim(sentence.substr(comma + 1));
      if (!text::TokenStrings(tail).empty()) {
        return {std::move(head), std::move(tail)};
      }
    }
  }
  return {text::Trim(sentence)};
}

bool ReconstructsRawText(const Sentence& sentence) {
  const std::u32string raw = text::NonSpace(sentence.raw_text);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < sentence.propositions.size(); ++i) {
    if (i > 0 && pos < raw.size() && raw[pos] == U',') ++pos;
    const std::u32string part = text::NonSpace(sentence.propositions[i].text);
    if (raw.compare(pos, part.size(), part) != 0) return false;
    pos += part.size();
  }
  return pos == raw.size();
}

GuidelineDocument ParsePlainText(std::string_view input, const ParseOptions& options) {
  if (!text::IsValidUtf8(input)) throw Error(ErrorKind::kInvalidInput, "encoding");
  if (text::NonSpace(input).empty()) {
    throw Error(ErrorKind::kInvalidInput, "empty document");
  }

  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= input.size()) {
      std::size_t end = input.find('\n', start);
      if (end == std::string_view::npos) end = input.size();
      std::string line(input.substr(start, end - start));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      start = end + 1;
    }
  }

  GuidelineDocument doc;
  doc.doc_id = options.doc_id;
  doc.source_format = SourceFormat::kPlainText;

  std::optional<PendingBlock> pending;
  auto section = [&doc]() -> Section& {
    if (doc.sections.empty()) doc.sections.emplace_back();
    return doc.sections.back();
  };
  auto flush = [&]() {
    if (!pending) return;
    Block block;
    block.kind = pending->kind;
    block.list_depth = pending->depth;
    block.marker = pending->marker;
    for (const auto& s : SplitSentences(text::Join(pending->lines, " "),
                                        options.abbreviations)) {
      Sentence sentence;
      sentence.raw_text = s;
      for (auto& p : SplitPropositions(s, options.lexicon)) {
        sentence.propositions.push_back(Proposition{std::move(p), {}, false, false});
      }
      block.sentences.push_back(std::move(sentence));
    }
    if (!block.sentences.empty()) section().blocks.push_back(std::move(block));
    pending.reset();
  };

  bool at_paragraph_start = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (IsBlank(line)) {
      flush();
      at_paragraph_start = true;
      continue;
    }
    if (auto item = MatchListMarker(line)) {
      flush();
      pending = PendingBlock{BlockKind::kListItem, item->depth, item->marker,
                             {item->rest}};
      at_paragraph_start = false;
      continue;
    }
    if (at_paragraph_start && IsHeading(lines, i)) {
      flush();
      if (doc.sections.empty() || !doc.sections.back().blocks.empty() ||
          !doc.sections.back().heading.empty()) {
        doc.sections.emplace_back();
      }
      doc.sections.back().heading = text::Trim(line);
      continue;
    }
    const bool indented = line[0] == ' ' || line[0] == '\t';
    if (pending && (pending->kind == BlockKind::kParagraph || indented)) {
      pending->lines.push_back(text::Trim(line));
    } else {
      flush();
      pending = PendingBlock{BlockKind::kParagraph, 0, "", {text::Trim(line)}};
    }
    at_paragraph_start = false;
  }
  flush();

  AssignPositions(doc);
  doc.title = options.title;
  if (doc.title.empty()) {
    for (const auto& s : doc.sections) {
      if (!s.heading.empty()) {
        doc.title = s.heading;
        break;
      }
    }
  }
  return doc;
}

std::vector<Proposition> UnitsInOrder(const GuidelineDocument& doc) {
  std::vector<Proposition> out;
  for (const auto& section : doc.sections) {
    for (const auto& block : section.blocks) {
      for (const auto& sentence : block.sentences) {
        out.insert(out.end(), sentence.propositions.begin(), sentence.propositions.end());
      }
    }
  }
  return out;
}

std::string RenderPlainText(const GuidelineDocument& doc) {
  std::string out;
  for (const auto& section : doc.sections) {
    if (!section.heading.empty()) out += section.heading + "\n\n";
    bool previous_was_item = false;
    for (const auto& block : section.blocks) {
      std::vector<std::string> sentences;
      for (const auto& s : block.sentences) sentences.push_back(s.raw_text);
      const std::string body = text::Join(sentences, " ");
      if (block.kind == BlockKind::kListItem) {
        out += std::string(2 * static_cast<std::size_t>(block.list_depth - 1), ' ');
        out += (block.marker.empty() ? std::string("-") : block.marker) + " " + body + "\n";
        previous_was_item = true;
      } else {
        if (previous_was_item) out += "\n";
        out += body + "\n\n";
        previous_was_item = false;
      }
    }
    if (previous_was_item) out += "\n";
  }
  return out;
}

DocumentIndex::DocumentIndex(const GuidelineDocument& doc) : doc_(&doc) {
  for (std::size_t s = 0; s < doc.sections.size(); ++s) {
    for (const auto& block : doc.sections[s].blocks) {
      const std::size_t block_ordinal = blocks_.size();
      blocks_.push_back(BlockEntry{&block, s, sentences_.size(), sentences_.size()});
      for (const auto& sentence : block.sentences) {
        const std::size_t sentence_ordinal = sentences_.size();
        sentences_.push_back(SentenceEntry{&sentence, units_.size(), units_.size(),
                                           block_ordinal});
        for (const auto& prop : sentence.propositions) {
          units_.push_back(UnitEntry{&prop, sentence_ordinal, block_ordinal, s});
        }
        sentences_.back().last = units_.size() - 1;
      }
      blocks_.back().last_sentence = sentences_.size() - 1;
    }
  }
}

}  // namespace structure
