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

// Reference lexical rankers over an InvertedIndex.
//
// BM25:
//   score(q, d) = sum over distinct query terms t with tf(t, d) > 0 of
//     qtf(t) * idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * |d| / avgdl))
//   idf(t) = ln((N - df + 0.5) / (df + 0.5) + 1)
//
// Query likelihood with Dirichlet smoothing:
//   score(q, d) = sum over distinct query terms t with P(t|C) > 0 of
//     qtf(t) * ln((tf(t, d) + mu * P(t|C)) / (|d| + mu))
//   P(t|C) = cf(t) / collection_length
// Query terms missing from the collection are skipped and tallied.

#ifndef RANKROBUST_RANKERS_HPP_
#define RANKROBUST_RANKERS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankrobust/index.hpp"
#include "rankrobust/types.hpp"

namespace rankrobust {

enum class Model { kBm25, kQlDirichlet };

// "bm25" / "ql" (also "ql_dirichlet"). Throws UsageError otherwise.
Model ParseModel(std::string_view name);
std::string_view ModelName(Model model);

struct RankerConfig {
  Model model = Model::kBm25;
  double k1 = 0.9;
  double b = 0.4;
  double mu = 1000.0;
  std::size_t top_k = 1000;
  // QL only: score every document rather than the union of the query
  // terms' postings. Documents still need one in-vocabulary query term.
  bool score_all_docs = false;

  // Throws UsageError when the selected model's parameters are out of range.
  void Validate() const;

  bool operator==(const RankerConfig&) const = default;
};

// Idf used by BM25; always positive.
double Bm25Idf(std::size_t doc_count, std::size_t doc_freq);

// Throws DataError for an unknown doc id. k1 = 0 is accepted here so the
// saturation-free identity can be checked.
double Bm25Score(const InvertedIndex& index,
                 std::span<const std::string> query_terms,
                 std::string_view doc_id, double k1, double b);

// `oov_terms`, when given, receives the number of query term occurrences
// that were skipped because the collection never contains them.
double QlDirichletScore(const InvertedIndex& index,
                        std::span<const std::string> query_terms,
                        std::string_view doc_id, double mu,
                        std::size_t* oov_terms = nullptr);

struct RankDiagnostics {
  std::size_t oov_terms = 0;
  std::size_t candidates = 0;
};

// Tokenizes the query with the index's tokenizer and ranks candidates.
RankedList Rank(const InvertedIndex& index, const QueryRecord& query,
                const RankerConfig& config,
                RankDiagnostics* diagnostics = nullptr);

// Same, for an already tokenized query.
RankedList RankTerms(const InvertedIndex& index, std::string_view query_id,
                     std::span<const std::string> query_terms,
                     const RankerConfig& config,
                     RankDiagnostics* diagnostics = nullptr);

// Scores exactly the given documents (e.g. a first-stage pool). Unknown ids
// throw DataError.
RankedList RankCandidates(const InvertedIndex& index,
                          std::string_view query_id,
                          std::span<const std::string> query_terms,
                          std::span<const std::string> candidate_doc_ids,
                          const RankerConfig& config,
                          RankDiagnostics* diagnostics = nullptr);

}  // namespace rankrobust

#endif  // RANKROBUST_RANKERS_HPP_
