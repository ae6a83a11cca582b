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

// Domain types shared by every module. No I/O and no scoring here.

#ifndef RANKROBUST_TYPES_HPP_
#define RANKROBUST_TYPES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankrobust {

struct QueryRecord {
  std::string id;
  std::string text;
  // Distribution tag (query type, source corpus) used to slice I.I.D. vs OOD.
  std::optional<std::string> group;

  bool operator==(const QueryRecord&) const = default;
};

struct DocRecord {
  std::string id;
  std::string text;

  bool operator==(const DocRecord&) const = default;
};

// Graded relevance judgments. Unjudged pairs have grade 0; a document is
// relevant when its grade is > 0.
class Qrels {
 public:
  using Judgments = std::map<std::string, int, std::less<>>;

  // Throws DataError on a negative grade or a repeated (query, doc) pair.
  void Add(std::string_view query_id, std::string_view doc_id, int grade);

  int Grade(std::string_view query_id, std::string_view doc_id) const;
  bool IsRelevant(std::string_view query_id, std::string_view doc_id) const {
    return Grade(query_id, doc_id) > 0;
  }
  // Number of documents with grade > 0 for the query.
  std::size_t RelevantCount(std::string_view query_id) const;
  bool HasQuery(std::string_view query_id) const;

  // Judgments for one query; empty when the query is unknown.
  const Judgments& ForQuery(std::string_view query_id) const;
  std::vector<std::string> QueryIds() const;
  std::size_t size() const;

  const std::map<std::string, Judgments, std::less<>>& all() const {
    return judgments_;
  }

  bool operator==(const Qrels&) const = default;

 private:
  std::map<std::string, Judgments, std::less<>> judgments_;
};

struct RankedEntry {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const RankedEntry&) const = default;
};

// Entry i (0-based) has rank i + 1.
struct RankedList {
  std::string query_id;
  std::vector<RankedEntry> entries;

  bool operator==(const RankedList&) const = default;
};

struct RunSet {
  std::string run_tag;
  std::map<std::string, RankedList, std::less<>> lists;

  // Null when the query has no list.
  const RankedList* Find(std::string_view query_id) const;

  bool operator==(const RunSet&) const = default;
};

struct MetricReport {
  std::string metric_name;
  std::optional<int> cutoff;
  std::map<std::string, double> per_query;
  double aggregate = 0.0;
  std::map<std::string, double> extras;
  // Query ids excluded from the aggregate, e.g. queries with no relevant doc.
  std::vector<std::string> skipped;
  // Resolved configuration of the run that produced the report.
  std::map<std::string, std::string> config;

  bool operator==(const MetricReport&) const = default;
};

struct Violation {
  enum class Kind { kDuplicateDoc, kScoreInversion };
  Kind kind;
  std::size_t rank;  // 1-based rank of the offending entry
  std::string message;
};

// Reports every duplicate doc id and every score increase along the list.
// An empty result means the list is valid.
std::vector<Violation> ValidateRankedList(const RankedList& list);

// Sorts entries by descending score, ties by ascending doc id.
void SortRankedList(RankedList& list);

}  // namespace rankrobust

#endif  // RANKROBUST_TYPES_HPP_
