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

// On-disk formats.
//
//   run       qid Q0 docid rank score runtag        (ASCII whitespace)
//   qrels     qid 0 docid grade
//   corpus    docid<TAB>text, or JSON lines {"id": ..., "contents": ...}
//   queries   qid<TAB>text[<TAB>group]
//   manifest  qid<TAB>original<TAB>attacked<TAB>edit_kind<TAB>word_index
//             <TAB>char_index<TAB>inserted<TAB>removed<TAB>seed
//             one row per edit; skipped queries get one row of kind "skip";
//             absent optional fields are empty
//   report    JSON {metric, cutoff, per_query, aggregate, extras, skipped,
//             config}; report files hold an array of these
//   index     JSON, see SaveIndex
//
// Every parser error carries the source name and 1-based line number.
// Writers emit records sorted by id so output is byte-stable.

#ifndef RANKROBUST_IO_HPP_
#define RANKROBUST_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankrobust/attacks.hpp"
#include "rankrobust/index.hpp"
#include "rankrobust/types.hpp"

namespace rankrobust {

// Rank gaps, repeated ranks, duplicate docs and score inversions are
// reported through `warnings` rather than rejected.
RunSet ParseRun(std::istream& in, const std::string& source = "",
                std::vector<std::string>* warnings = nullptr);
// Scores are printed with 6 significant digits; ranks are renumbered from
// list position.
void WriteRun(const RunSet& run, std::ostream& out);

Qrels ParseQrels(std::istream& in, const std::string& source = "");
void WriteQrels(const Qrels& qrels, std::ostream& out);

enum class CorpusFormat { kTsv, kJsonl };
CorpusFormat ParseCorpusFormat(std::string_view name);

// Rejects duplicate doc ids.
std::vector<DocRecord> ParseCorpus(std::istream& in, CorpusFormat format,
                                   const std::string& source = "");
void WriteCorpus(std::span<const DocRecord> docs, CorpusFormat format,
                 std::ostream& out);

// Rejects duplicate ids, empty text and text containing a tab.
std::vector<QueryRecord> ParseQueries(std::istream& in,
                                      const std::string& source = "");
void WriteQueries(std::span<const QueryRecord> queries, std::ostream& out);

// Verifies that every entry's edits replay onto its original.
std::vector<AttackManifestEntry> ParseManifest(std::istream& in,
                                               const std::string& source = "");
void WriteManifest(std::span<const AttackManifestEntry> entries,
                   std::ostream& out);

void WriteReport(const MetricReport& report, std::ostream& out);
void WriteReports(std::span<const MetricReport> reports, std::ostream& out);
// Accepts a single report object or an array of them.
std::vector<MetricReport> ParseReports(std::istream& in,
                                       const std::string& source = "");

// JSON: {"format": "rankrobust-index", "version": 1, "tokenizer": {...},
//        "docs": [[id, length], ...], "postings": {term: [[doc, tf], ...]}}
void SaveIndex(const InvertedIndex& index, std::ostream& out);
InvertedIndex LoadIndex(std::istream& in, const std::string& source = "");

// "%.6g".
std::string FormatScore(double score);

// File helpers. Throw DataError when the file cannot be opened.
std::string ReadFileToString(const std::filesystem::path& path);
void WriteStringToFile(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace rankrobust

#endif  // RANKROBUST_IO_HPP_
