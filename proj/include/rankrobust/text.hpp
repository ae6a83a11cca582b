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

// Query and document preprocessing.
//
// Text is treated as UTF-8. A "character" is one well-formed UTF-8 sequence;
// a stray byte that does not start a well-formed sequence counts as a
// character on its own, so splitting and re-joining never alters bytes.

#ifndef RANKROBUST_TEXT_HPP_
#define RANKROBUST_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rankrobust {

enum class Stemmer { kNone, kSimpleSuffix };

struct TokenizerConfig {
  bool lowercase = true;
  Stemmer stemmer = Stemmer::kNone;
  bool strip_punctuation = true;

  bool operator==(const TokenizerConfig&) const = default;
};

// "none" / "simple_suffix". Throws UsageError on an unknown name.
Stemmer ParseStemmer(std::string_view name);
std::string_view StemmerName(Stemmer stemmer);

// Whitespace split, ASCII lowercasing, trimming of leading and trailing
// ASCII punctuation, empty-token removal, then stemming.
std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerConfig& config);

struct Word {
  std::string text;
  std::size_t start = 0;  // byte offset into the source string
  std::size_t end = 0;    // one past the last byte

  bool operator==(const Word&) const = default;
};

// Whitespace split that keeps casing and punctuation.
std::vector<Word> WordSplit(std::string_view text);

// Splits into characters (see file comment); concatenating the result
// reproduces the input byte for byte.
std::vector<std::string_view> SplitChars(std::string_view text);

bool IsUnicodeWhitespace(char32_t code_point);

// Suffix stemmer. Rules are tried in order and the first match wins; a rule
// only fires if at least 3 characters remain after removing the suffix.
//
//   sses -> ss       (classes -> class)
//   ies  -> y        (queries -> query)
//   ing  -> ""       then undouble a trailing doubled consonant
//   ed   -> ""       then undouble a trailing doubled consonant
//   s    -> ""       unless the word ends in ss, us or is
//
// Undoubling drops the last letter of a final pair of identical consonants
// other than l, s and z (running -> runn -> run; falling -> fall).
std::string SimpleSuffixStem(std::string_view token);

}  // namespace rankrobust

#endif  // RANKROBUST_TEXT_HPP_
