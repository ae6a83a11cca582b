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

#include "rankrobust/types.hpp"

#include <algorithm>
#include <unordered_set>

#include "rankrobust/error.hpp"

namespace rankrobust {

void Qrels::Add(std::string_view query_id, std::string_view doc_id,
                int grade) {
  if (grade < 0) {
    throw DataError("negative relevance grade " + std::to_string(grade) +
                    " for (" + std::string(query_id) + ", " +
                    std::string(doc_id) + ")");
  }
  auto& docs = judgments_[std::string(query_id)];
  auto [it, inserted] = docs.emplace(std::string(doc_id), grade);
  if (!inserted) {
    throw DataError("duplicate judgment for (" + std::string(query_id) +
                    ", " + std::string(doc_id) + ")");
  }
}

int Qrels::Grade(std::string_view query_id, std::string_view doc_id) const {
  auto q = judgments_.find(query_id);
  if (q == judgments_.end()) return 0;
  auto d = q->second.find(doc_id);
  return d == q->second.end() ? 0 : d->second;
}

std::size_t Qrels::RelevantCount(std::string_view query_id) const {
  const auto& docs = ForQuery(query_id);
  return static_cast<std::size_t>(std::count_if(
      docs.begin(), docs.end(), [](const auto& kv) { return kv.second > 0; }));
}

bool Qrels::HasQuery(std::string_view query_id) const {
  return judgments_.find(query_id) != judgments_.end();
}

const Qrels::Judgments& Qrels::ForQuery(std::string_view query_id) const {
  static const Judgments kEmpty;
  auto q = judgments_.find(query_id);
  return q == judgments_.end() ? kEmpty : q->second;
}

std::vector<std::string> Qrels::QueryIds() const {
  std::vector<std::string> ids;
  ids.reserve(judgments_.size());
  for (const auto& [qid, docs] : judgments_) ids.push_back(qid);
  return ids;
}

std::size_t Qrels::size() const {
  std::size_t n = 0;
  for (const auto& [qid, docs] : judgments_) n += docs.size();
  return n;
}

const RankedList* RunSet::Find(std::string_view query_id) const {
  auto it = lists.find(query_id);
  return it == lists.end() ? nullptr : &it->second;
}

std::vector<Violation> ValidateRankedList(const RankedList& list) {
  std::vector<Violation> violations;
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    const auto& entry = list.entries[i];
    const std::size_t rank = i + 1;
    if (!seen.insert(entry.doc_id).second) {
      violations.push_back({Violation::Kind::kDuplicateDoc, rank,
                            "duplicate doc id " + entry.doc_id});
    }
    if (i > 0 && entry.score > list.entries[i - 1].score) {
      violations.push_back({Violation::Kind::kScoreInversion, rank,
                            "score inversion at rank " + std::to_string(rank)});
    }
  }
  return violations;
}

void SortRankedList(RankedList& list) {
  std::sort(list.entries.begin(), list.entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.doc_id < b.doc_id;
            });
}

}  // namespace rankrobust
