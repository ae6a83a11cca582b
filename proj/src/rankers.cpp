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

#include "rankrobust/rankers.hpp"

#include <algorithm>
#include <cmath>

#include "rankrobust/error.hpp"

namespace rankrobust {
namespace {

struct QueryTerm {
  std::string_view text;
  std::uint32_t qtf = 0;
  const std::vector<Posting>* postings = nullptr;
  std::size_t df = 0;
  double collection_prob = 0.0;  // P(t|C)
  double idf = 0.0;
};

// Distinct terms in first-occurrence order. Both the single-document
// scorers and Rank go through the same kernels below, so a document gets
// bit-identical scores on either path.
std::vector<QueryTerm> Analyze(const InvertedIndex& index,
                               std::span<const std::string> terms) {
  std::vector<QueryTerm> out;
  for (const auto& term : terms) {
    auto it = std::find_if(out.begin(), out.end(), [&](const QueryTerm& q) {
      return q.text == term;
    });
    if (it != out.end()) {
      ++it->qtf;
      continue;
    }
    QueryTerm q;
    q.text = term;
    q.qtf = 1;
    q.postings = index.FindPostings(term);
    q.df = q.postings ? q.postings->size() : 0;
    if (index.collection_length() > 0) {
      q.collection_prob = static_cast<double>(index.CollectionTermFreq(term)) /
                          static_cast<double>(index.collection_length());
    }
    q.idf = Bm25Idf(index.doc_count(), q.df);
    out.push_back(q);
  }
  return out;
}

double Bm25Kernel(std::span<const QueryTerm> terms,
                  std::span<const std::uint32_t> tfs, std::uint32_t doc_len,
                  double avgdl, double k1, double b) {
  const double norm = k1 * (1.0 - b + b * static_cast<double>(doc_len) / avgdl);
  double score = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (tfs[j] == 0) continue;
    const double tf = static_cast<double>(tfs[j]);
    score += terms[j].qtf * terms[j].idf * tf * (k1 + 1.0) / (tf + norm);
  }
  return score;
}

double QlKernel(std::span<const QueryTerm> terms,
                std::span<const std::uint32_t> tfs, std::uint32_t doc_len,
                double mu, std::size_t* oov) {
  const double denom = static_cast<double>(doc_len) + mu;
  double score = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (terms[j].collection_prob <= 0.0) {
      if (oov) *oov += terms[j].qtf;
      continue;
    }
    const double smoothed =
        static_cast<double>(tfs[j]) + mu * terms[j].collection_prob;
    score += terms[j].qtf * std::log(smoothed / denom);
  }
  return score;
}

std::uint32_t RequireDoc(const InvertedIndex& index, std::string_view doc_id) {
  auto doc = index.FindDoc(doc_id);
  if (!doc) throw DataError("unknown doc id " + std::string(doc_id));
  return *doc;
}

std::vector<std::uint32_t> TermFreqs(const InvertedIndex& index,
                                     std::span<const QueryTerm> terms,
                                     std::uint32_t doc) {
  std::vector<std::uint32_t> tfs(terms.size(), 0);
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (terms[j].postings) tfs[j] = index.TermFreq(terms[j].text, doc);
  }
  return tfs;
}

double ScoreDoc(const InvertedIndex& index, std::span<const QueryTerm> terms,
                std::span<const std::uint32_t> tfs, std::uint32_t doc,
                const RankerConfig& config, std::size_t* oov) {
  if (config.model == Model::kBm25) {
    return Bm25Kernel(terms, tfs, index.DocLength(doc),
                      index.avg_doc_length(), config.k1, config.b);
  }
  return QlKernel(terms, tfs, index.DocLength(doc), config.mu, oov);
}

std::size_t CountOov(std::span<const QueryTerm> terms) {
  std::size_t n = 0;
  for (const auto& t : terms) {
    if (t.collection_prob <= 0.0) n += t.qtf;
  }
  return n;
}

RankedList Finish(std::string_view query_id, RankedList list,
                  std::size_t top_k) {
  list.query_id = std::string(query_id);
  SortRankedList(list);
  if (list.entries.size() > top_k) list.entries.resize(top_k);
  return list;
}

}  // namespace

Model ParseModel(std::string_view name) {
  if (name == "bm25") return Model::kBm25;
  if (name == "ql" || name == "ql_dirichlet") return Model::kQlDirichlet;
  throw UsageError("unknown model '" + std::string(name) + "'");
}

std::string_view ModelName(Model model) {
  return model == Model::kBm25 ? "bm25" : "ql";
}

void RankerConfig::Validate() const {
  if (top_k == 0) throw UsageError("top_k must be positive");
  if (model == Model::kBm25) {
    if (!(k1 > 0.0)) throw UsageError("bm25 requires k1 > 0");
    if (!(b >= 0.0 && b <= 1.0)) throw UsageError("bm25 requires b in [0, 1]");
  } else if (!(mu > 0.0)) {
    throw UsageError("ql requires mu > 0");
  }
}

double Bm25Idf(std::size_t doc_count, std::size_t doc_freq) {
  const double n = static_cast<double>(doc_count);
  const double df = static_cast<double>(doc_freq);
  return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

double Bm25Score(const InvertedIndex& index,
                 std::span<const std::string> query_terms,
                 std::string_view doc_id, double k1, double b) {
  const std::uint32_t doc = RequireDoc(index, doc_id);
  const auto terms = Analyze(index, query_terms);
  const auto tfs = TermFreqs(index, terms, doc);
  return Bm25Kernel(terms, tfs, index.DocLength(doc), index.avg_doc_length(),
                    k1, b);
}

double QlDirichletScore(const InvertedIndex& index,
                        std::span<const std::string> query_terms,
                        std::string_view doc_id, double mu,
                        std::size_t* oov_terms) {
  if (!(mu > 0.0)) throw UsageError("ql requires mu > 0");
  const std::uint32_t doc = RequireDoc(index, doc_id);
  const auto terms = Analyze(index, query_terms);
  const auto tfs = TermFreqs(index, terms, doc);
  return QlKernel(terms, tfs, index.DocLength(doc), mu, oov_terms);
}

RankedList Rank(const InvertedIndex& index, const QueryRecord& query,
                const RankerConfig& config, RankDiagnostics* diagnostics) {
  const auto terms = Tokenize(query.text, index.tokenizer_config());
  return RankTerms(index, query.id, terms, config, diagnostics);
}

RankedList RankTerms(const InvertedIndex& index, std::string_view query_id,
                     std::span<const std::string> query_terms,
                     const RankerConfig& config,
                     RankDiagnostics* diagnostics) {
  config.Validate();
  const auto terms = Analyze(index, query_terms);
  const std::size_t m = terms.size();

  // Candidate documents in ascending doc order, with a tf row per candidate.
  std::vector<std::uint32_t> candidates;
  std::vector<std::uint32_t> tf_rows;
  const bool any_match = std::any_of(terms.begin(), terms.end(),
                                     [](const QueryTerm& t) { return t.postings; });
  if (any_match && config.model == Model::kQlDirichlet &&
      config.score_all_docs) {
    candidates.resize(index.doc_count());
    for (std::uint32_t d = 0; d < candidates.size(); ++d) candidates[d] = d;
  } else {
    for (const auto& t : terms) {
      if (!t.postings) continue;
      for (const auto& p : *t.postings) candidates.push_back(p.doc);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
  }
  tf_rows.assign(candidates.size() * m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    if (!terms[j].postings) continue;
    // Both sequences are sorted by doc; merge them.
    std::size_t c = 0;
    for (const auto& p : *terms[j].postings) {
      while (c < candidates.size() && candidates[c] < p.doc) ++c;
      if (c == candidates.size()) break;
      if (candidates[c] == p.doc) tf_rows[c * m + j] = p.tf;
    }
  }

  RankedList list;
  list.entries.reserve(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::span<const std::uint32_t> tfs(tf_rows.data() + c * m, m);
    list.entries.push_back(
        {index.DocId(candidates[c]),
         ScoreDoc(index, terms, tfs, candidates[c], config, nullptr)});
  }
  if (diagnostics) {
    diagnostics->oov_terms = CountOov(terms);
    diagnostics->candidates = candidates.size();
  }
  return Finish(query_id, std::move(list), config.top_k);
}

RankedList RankCandidates(const InvertedIndex& index,
                          std::string_view query_id,
                          std::span<const std::string> query_terms,
                          std::span<const std::string> candidate_doc_ids,
                          const RankerConfig& config,
                          RankDiagnostics* diagnostics) {
  config.Validate();
  const auto terms = Analyze(index, query_terms);
  RankedList list;
  std::vector<bool> seen(index.doc_count(), false);
  std::size_t scored = 0;
  for (const auto& id : candidate_doc_ids) {
    const std::uint32_t doc = RequireDoc(index, id);
    if (seen[doc]) continue;
    seen[doc] = true;
    ++scored;
    const auto tfs = TermFreqs(index, terms, doc);
    list.entries.push_back(
        {id, ScoreDoc(index, terms, tfs, doc, config, nullptr)});
  }
  if (diagnostics) {
    diagnostics->oov_terms = CountOov(terms);
    diagnostics->candidates = scored;
  }
  return Finish(query_id, std::move(list), config.top_k);
}

}  // namespace rankrobust
