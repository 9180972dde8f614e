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

#include "structure/text.hpp"

namespace structure::text {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Returns the sequence length for a lead byte, 0 if it cannot start one.
int SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

// Decodes one code point at `pos`, advancing it. Returns kReplacement and
// advances by one byte on malformed input.
char32_t DecodeOne(std::string_view s, std::size_t& pos, bool* ok) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  const int len = SequenceLength(lead);
  if (len == 0 || pos + len > s.size()) {
    *ok = false;
    ++pos;
    return kReplacement;
  }
  if (len == 1) {
    ++pos;
    return lead;
  }
  char32_t cp = lead & (0xFF >> (len + 1));
  for (int i = 1; i < len; ++i) {
    const auto cont = static_cast<unsigned char>(s[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      *ok = false;
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  // Overlongs, surrogates and out-of-range values.
  const bool overlong = (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
  if (overlong || (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
    *ok = false;
    ++pos;
    return kReplacement;
  }
  pos += len;
  return cp;
}

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

bool IsValidUtf8(std::string_view input) {
  bool ok = true;
  for (std::size_t pos = 0; pos < input.size() && ok;) DecodeOne(input, pos, &ok);
  return ok;
}

std::u32string Decode(std::string_view input) {
  std::u32string out;
  out.reserve(input.size());
  bool ok = true;
  for (std::size_t pos = 0; pos < input.size();) {
    out.push_back(DecodeOne(input, pos, &ok));
  }
  return out;
}

std::string Encode(std::u32string_view input) {
  std::string out;
  out.reserve(input.size());
  for (char32_t cp : input) AppendUtf8(out, cp);
  return out;
}

char32_t ToLower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c < 0xC0) return c;
  if (c <= 0xDE && c != 0xD7) return c + 0x20;
  // Latin Extended-A alternates upper/lower in two phases around U+0138.
  if ((c >= 0x100 && c <= 0x137) || (c >= 0x14A && c <= 0x177)) {
    return (c % 2 == 0) ? c + 1 : c;
  }
  if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) {
    return (c % 2 == 1) ? c + 1 : c;
  }
  if (c == 0x178) return 0xFF;
  return c;
}

std::string ToLower(std::string_view input) {
  std::string out;
  out.reserve(input.size());
  bool ok = true;
  for (std::size_t pos = 0; pos < input.size();) {
    const std::size_t start = pos;
    const char32_t cp = DecodeOne(input, pos, &ok);
    if (cp == kReplacement && !ok) {
      out.append(input.substr(start, pos - start));
      ok = true;
      continue;
    }
    AppendUtf8(out, ToLower(cp));
  }
  return out;
}

bool IsWordChar(char32_t c) {
  if (c < 0x80) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') ||
           (c >= U'0' && c <= U'9');
  }
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;  // punctuation, symbols
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c == 0xFEFF || c == kReplacement) return false;
  return true;
}

bool IsSpace(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v' || c == 0xA0 || c == 0x202F || c == 0x2009 ||
         c == 0x3000 || c == 0xFEFF;
}

std::vector<Token> Tokenize(std::string_view input) {
  std::vector<Token> tokens;
  bool ok = true;
  std::size_t pos = 0;
  Token current{"", 0, 0};
  bool in_token = false;
  while (pos < input.size()) {
    const std::size_t start = pos;
    const char32_t cp = DecodeOne(input, pos, &ok);
    if (IsWordChar(cp)) {
      if (!in_token) {
        current = Token{"", start, start};
        in_token = true;
      }
      AppendUtf8(current.text, ToLower(cp));
      current.end = pos;
    } else if (in_token) {
      if (cp == U'\'' || cp == U'\u2019') {
        std::size_t look = pos;
        bool look_ok = true;
        current.elided = look < input.size() && IsWordChar(DecodeOne(input, look, &look_ok));
      }
      tokens.push_back(std::move(current));
      in_token = false;
    }
  }
  if (in_token) tokens.push_back(std::move(current));
  return tokens;
}

bool TokenMatches(const Token& token, std::string_view word) {
  if (token.text == word) return true;
  if (!token.elided || word.size() != token.text.size() + 1 ||
      word.substr(0, token.text.size()) != token.text) {
    return false;
  }
  const char last = word.back();
  return last == 'e' || (last == 'a' && token.text == "l") ||
         (last == 'i' && token.text == "s");
}

std::vector<std::string> TokenStrings(std::string_view input) {
  std::vector<std::string> out;
  for (auto& token : Tokenize(input)) out.push_back(std::move(token.text));
  return out;
}

std::size_t FindPhrase(const std::vector<Token>& tokens,
                       const std::vector<std::string>& phrase,
                       std::size_t from) {
  if (phrase.empty() || tokens.size() < phrase.size()) return std::string::npos;
  for (std::size_t i = from; i + phrase.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < phrase.size() && match; ++j) {
      match = TokenMatches(tokens[i + j], phrase[j]);
    }
    if (match) return i;
  }
  return std::string::npos;
}

bool StartsWithPhrase(const std::vector<Token>& tokens,
                      const std::vector<std::string>& phrase) {
  if (phrase.empty() || tokens.size() < phrase.size()) return false;
  for (std::size_t j = 0; j < phrase.size(); ++j) {
    if (!TokenMatches(tokens[j], phrase[j])) return false;
  }
  return true;
}

std::string Trim(std::string_view input) {
  const std::u32string decoded = Decode(input);
  std::size_t first = 0;
  std::size_t last = decoded.size();
  while (first < last && IsSpace(decoded[first])) ++first;
  while (last > first && IsSpace(decoded[last - 1])) --last;
  if (first == 0 && last == decoded.size()) return std::string(input);
  return Encode(std::u32string_view(decoded).substr(first, last - first));
}

std::string CollapseWhitespace(std::string_view input) {
  std::u32string out;
  bool pending_space = false;
  for (char32_t cp : Decode(input)) {
    if (IsSpace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(cp);
  }
  return Encode(out);
}

std::size_t CodepointCount(std::string_view input) {
  std::size_t n = 0;
  for (unsigned char c : input) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::u32string NonSpace(std::string_view input) {
  std::u32string out;
  for (char32_t cp : Decode(input)) {
    if (!IsSpace(cp)) out.push_back(cp);
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace structure::text
