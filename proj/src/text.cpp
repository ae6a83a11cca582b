//
// Copyright 2026 The rankrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "rankrobust/text.hpp"

#include <optional>

#include "rankrobust/error.hpp"

namespace rankrobust {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 sequence at `pos`. Returns the code point and advances
// `pos`; on malformed input returns kInvalid and advances by one byte.
char32_t DecodeOne(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4, cp = lead & 0x07, min = 0x10000;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto c = static_cast<unsigned char>(text[pos + i]);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += len;
  return cp;
}

bool IsAsciiPunct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

bool IsConsonant(char c) {
  if (c < 'a' || c > 'z') return false;
  return c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u';
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string Undouble(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && IsConsonant(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
  }
  return stem;
}

constexpr std::size_t kMinStem = 3;

// Calls `visit(start, end)` for each whitespace-delimited run of bytes.
template <typename Visit>
void ForEachWord(std::string_view text, Visit visit) {
  std::optional<std::size_t> start;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t here = pos;
    const char32_t cp = DecodeOne(text, pos);
    if (cp != kInvalid && IsUnicodeWhitespace(cp)) {
      if (start) visit(*start, here);
      start.reset();
    } else if (!start) {
      start = here;
    }
  }
  if (start) visit(*start, text.size());
}

}  // namespace

bool IsUnicodeWhitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

Stemmer ParseStemmer(std::string_view name) {
  if (name == "none") return Stemmer::kNone;
  if (name == "simple_suffix") return Stemmer::kSimpleSuffix;
  throw UsageError("unknown stemmer '" + std::string(name) + "'");
}

std::string_view StemmerName(Stemmer stemmer) {
  return stemmer == Stemmer::kNone ? "none" : "simple_suffix";
}

std::string SimpleSuffixStem(std::string_view token) {
  const auto fires = [&](std::string_view suffix) {
    return EndsWith(token, suffix) &&
           token.size() - suffix.size() >= kMinStem;
  };
  const auto cut = [&](std::string_view suffix) {
    return std::string(token.substr(0, token.size() - suffix.size()));
  };
  if (fires("sses")) return cut("sses") + "ss";
  if (fires("ies")) return cut("ies") + "y";
  if (fires("ing")) return Undouble(cut("ing"));
  if (fires("ed")) return Undouble(cut("ed"));
  if (fires("s") && !EndsWith(token, "ss") && !EndsWith(token, "us") &&
      !EndsWith(token, "is")) {
    return cut("s");
  }
  return std::string(token);
}

std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  ForEachWord(text, [&](std::size_t start, std::size_t end) {
    std::string_view word = text.substr(start, end - start);
    if (config.strip_punctuation) {
      while (!word.empty() && IsAsciiPunct(word.front())) word.remove_prefix(1);
      while (!word.empty() && IsAsciiPunct(word.back())) word.remove_suffix(1);
    }
    if (word.empty()) return;
    std::string token(word);
    if (config.lowercase) {
      for (char& c : token) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
    }
    if (config.stemmer == Stemmer::kSimpleSuffix) {
      token = SimpleSuffixStem(token);
    }
    tokens.push_back(std::move(token));
  });
  return tokens;
}

std::vector<Word> WordSplit(std::string_view text) {
  std::vector<Word> words;
  ForEachWord(text, [&](std::size_t start, std::size_t end) {
    words.push_back({std::string(text.substr(start, end - start)), start, end});
  });
  return words;
}

std::vector<std::string_view> SplitChars(std::string_view text) {
  std::vector<std::string_view> chars;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    DecodeOne(text, pos);
    chars.push_back(text.substr(start, pos - start));
  }
  return chars;
}

}  // namespace rankrobust
