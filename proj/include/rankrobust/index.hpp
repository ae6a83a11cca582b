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

#ifndef RANKROBUST_INDEX_HPP_
#define RANKROBUST_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rankrobust/text.hpp"
#include "rankrobust/types.hpp"

namespace rankrobust {

struct Posting {
  std::uint32_t doc = 0;  // internal document number, corpus order
  std::uint32_t tf = 0;

  bool operator==(const Posting&) const = default;
};

// Write-once inverted index with the collection statistics needed by BM25
// and query likelihood. Immutable after construction.
class InvertedIndex {
 public:
  using PostingMap = std::map<std::string, std::vector<Posting>, std::less<>>;

  // Throws DataError on an empty corpus or a duplicate doc id. Documents
  // that tokenize to nothing are kept with length 0 and reported in
  // warnings().
  static InvertedIndex Build(std::span<const DocRecord> corpus,
                             const TokenizerConfig& config);

  // Reassembles a persisted index. Postings must be sorted by doc number.
  // Throws DataError if the statistics are inconsistent.
  static InvertedIndex FromParts(TokenizerConfig config,
                                 std::vector<std::string> doc_ids,
                                 std::vector<std::uint32_t> doc_lengths,
                                 PostingMap postings);

  std::size_t doc_count() const { return doc_ids_.size(); }
  std::uint64_t collection_length() const { return collection_length_; }
  // collection_length / doc_count.
  double avg_doc_length() const {
    return static_cast<double>(collection_length_) /
           static_cast<double>(doc_ids_.size());
  }
  const TokenizerConfig& tokenizer_config() const { return config_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::optional<std::uint32_t> FindDoc(std::string_view doc_id) const;
  const std::string& DocId(std::uint32_t doc) const { return doc_ids_[doc]; }
  std::uint32_t DocLength(std::uint32_t doc) const { return doc_lengths_[doc]; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<std::uint32_t>& doc_lengths() const {
    return doc_lengths_;
  }

  // Null for terms not in the vocabulary.
  const std::vector<Posting>* FindPostings(std::string_view term) const;
  std::size_t DocFreq(std::string_view term) const;
  std::uint64_t CollectionTermFreq(std::string_view term) const;
  std::uint32_t TermFreq(std::string_view term, std::uint32_t doc) const;

  const PostingMap& postings() const { return postings_; }
  std::size_t vocabulary_size() const { return postings_.size(); }

  // The n most frequent terms by collection frequency, ties by term.
  std::vector<std::string> TopTerms(std::size_t n) const;

  bool operator==(const InvertedIndex& other) const {
    return config_ == other.config_ && doc_ids_ == other.doc_ids_ &&
           doc_lengths_ == other.doc_lengths_ && postings_ == other.postings_;
  }

 private:
  InvertedIndex() = default;
  void Finalize();

  TokenizerConfig config_;
  std::vector<std::string> doc_ids_;
  std::vector<std::uint32_t> doc_lengths_;
  std::unordered_map<std::string, std::uint32_t> doc_lookup_;
  PostingMap postings_;
  std::unordered_map<std::string, std::uint64_t> collection_tf_;
  std::uint64_t collection_length_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace rankrobust

#endif  // RANKROBUST_INDEX_HPP_
