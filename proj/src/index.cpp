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

#include "rankrobust/index.hpp"

#include <algorithm>
#include <limits>

#include "rankrobust/error.hpp"

namespace rankrobust {

InvertedIndex InvertedIndex::Build(std::span<const DocRecord> corpus,
                                   const TokenizerConfig& config) {
  if (corpus.empty()) throw DataError("cannot index an empty corpus");
  if (corpus.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw DataError("corpus too large");
  }
  InvertedIndex index;
  index.config_ = config;
  index.doc_ids_.reserve(corpus.size());
  index.doc_lengths_.reserve(corpus.size());

  std::map<std::string, std::uint32_t, std::less<>> counts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const DocRecord& doc = corpus[i];
    if (doc.id.empty()) throw DataError("empty doc id at position " +
                                        std::to_string(i));
    if (!index.doc_lookup_.emplace(doc.id, static_cast<std::uint32_t>(i))
             .second) {
      throw DataError("duplicate doc id " + doc.id);
    }
    counts.clear();
    const auto tokens = Tokenize(doc.text, config);
    for (const auto& token : tokens) ++counts[token];
    const auto doc_num = static_cast<std::uint32_t>(i);
    for (const auto& [term, tf] : counts) {
      auto it = index.postings_.find(term);
      if (it == index.postings_.end()) {
        it = index.postings_.emplace(term, std::vector<Posting>{}).first;
      }
      it->second.push_back({doc_num, tf});
    }
    if (tokens.empty()) {
      index.warnings_.push_back("document " + doc.id +
                                " is empty after tokenization");
    }
    index.doc_ids_.push_back(doc.id);
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
  }
  index.Finalize();
  return index;
}

InvertedIndex InvertedIndex::FromParts(TokenizerConfig config,
                                       std::vector<std::string> doc_ids,
                                       std::vector<std::uint32_t> doc_lengths,
                                       PostingMap postings) {
  if (doc_ids.empty()) throw DataError("index has no documents");
  if (doc_ids.size() != doc_lengths.size()) {
    throw DataError("index doc table and length table differ in size");
  }
  InvertedIndex index;
  index.config_ = config;
  index.doc_ids_ = std::move(doc_ids);
  index.doc_lengths_ = std::move(doc_lengths);
  index.postings_ = std::move(postings);

  // Every posting tf must add up to its document's length.
  std::vector<std::uint64_t> lengths(index.doc_ids_.size(), 0);
  for (const auto& [term, list] : index.postings_) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Posting& p = list[i];
      if (p.doc >= index.doc_ids_.size() || p.tf == 0 ||
          (i > 0 && list[i - 1].doc >= p.doc)) {
        throw DataError("corrupt posting list for term '" + term + "'");
      }
      lengths[p.doc] += p.tf;
    }
  }
  for (std::size_t d = 0; d < lengths.size(); ++d) {
    if (lengths[d] != index.doc_lengths_[d]) {
      throw DataError("length of document " + index.doc_ids_[d] +
                      " disagrees with its postings");
    }
    if (index.doc_lengths_[d] == 0) {
      index.warnings_.push_back("document " + index.doc_ids_[d] +
                                " is empty after tokenization");
    }
  }
  index.Finalize();
  return index;
}

void InvertedIndex::Finalize() {
  doc_lookup_.clear();
  doc_lookup_.reserve(doc_ids_.size());
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    if (!doc_lookup_.emplace(doc_ids_[i], static_cast<std::uint32_t>(i))
             .second) {
      throw DataError("duplicate doc id " + doc_ids_[i]);
    }
  }
  collection_length_ = 0;
  for (auto len : doc_lengths_) collection_length_ += len;
  if (collection_length_ == 0) {
    warnings_.push_back("collection has no tokens; no query can match");
  }
  collection_tf_.clear();
  collection_tf_.reserve(postings_.size());
  for (const auto& [term, list] : postings_) {
    std::uint64_t cf = 0;
    for (const auto& p : list) cf += p.tf;
    collection_tf_.emplace(term, cf);
  }
}

std::optional<std::uint32_t> InvertedIndex::FindDoc(
    std::string_view doc_id) const {
  auto it = doc_lookup_.find(std::string(doc_id));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Posting>* InvertedIndex::FindPostings(
    std::string_view term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

std::size_t InvertedIndex::DocFreq(std::string_view term) const {
  const auto* list = FindPostings(term);
  return list ? list->size() : 0;
}

std::uint64_t InvertedIndex::CollectionTermFreq(std::string_view term) const {
  auto it = collection_tf_.find(std::string(term));
  return it == collection_tf_.end() ? 0 : it->second;
}

std::uint32_t InvertedIndex::TermFreq(std::string_view term,
                                      std::uint32_t doc) const {
  const auto* list = FindPostings(term);
  if (!list) return 0;
  auto it = std::lower_bound(
      list->begin(), list->end(), doc,
      [](const Posting& p, std::uint32_t d) { return p.doc < d; });
  return (it != list->end() && it->doc == doc) ? it->tf : 0;
}

std::vector<std::string> InvertedIndex::TopTerms(std::size_t n) const {
  std::vector<std::pair<std::uint64_t, const std::string*>> ranked;
  ranked.reserve(postings_.size());
  for (const auto& [term, list] : postings_) {
    ranked.emplace_back(CollectionTermFreq(term), &term);
  }
  const std::size_t keep = std::min(n, ranked.size());
  const auto by_freq = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  };
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    by_freq);
  std::vector<std::string> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(*ranked[i].second);
  return out;
}

}  // namespace rankrobust
