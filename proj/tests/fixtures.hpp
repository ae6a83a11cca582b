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


// Small corpora shared by the index, ranker and tuning tests.

#ifndef RANKROBUST_TESTS_FIXTURES_HPP_
#define RANKROBUST_TESTS_FIXTURES_HPP_

#include <vector>

#include "rankrobust/types.hpp"

namespace rankrobust::testing_fixtures {

inline std::vector<DocRecord> ThreeDocs() {
  return {{"d1", "a b c"}, {"d2", "b b d"}, {"d3", "c a a b e"}};
}

inline std::vector<DocRecord> FiveDocs() {
  return {{"d1", "the quick brown fox jumps"},
          {"d2", "quick quick fox"},
          {"d3", "lazy dog sleeps all day long"},
          {"d4", "the brown dog and the brown fox"},
          {"d5", "fox"}};
}

inline std::vector<QueryRecord> FiveDocQueries() {
  return {{"q1", "quick fox", std::nullopt},
          {"q2", "brown dog", std::nullopt},
          {"q3", "lazy cat", std::nullopt},
          {"q4", "the fox fox", std::nullopt}};
}

}  // namespace rankrobust::testing_fixtures

#endif  // RANKROBUST_TESTS_FIXTURES_HPP_
