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


#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "frozen_scores.hpp"
#include "gtest/gtest.h"
#include "rankrobust/error.hpp"
#include "rankrobust/index.hpp"
#include "rankrobust/rankers.hpp"
#include "rankrobust/text.hpp"

namespace rankrobust {
namespace {

using testing_fixtures::FiveDocQueries;
using testing_fixtures::FiveDocs;
using testing_fixtures::ThreeDocs;

using testing_fixtures::kBm25Oracle;
using testing_fixtures::kQlOracle;
using testing_fixtures::Scores;

RankerConfig Bm25Config() {
  RankerConfig c;
  c.model = Model::kBm25;
  c.k1 = 1.2;
  c.b = 0.75;
  return c;
}

RankerConfig QlConfig() {
  RankerConfig c;
  c.model = Model::kQlDirichlet;
  c.mu = 100.0;
  return c;
}

std::vector<std::string> Terms(const std::string& text) {
  return Tokenize(text, TokenizerConfig{});
}

Scores AsScores(const RankedList& list) {
  Scores out;
  for (const auto& e : list.entries) out[e.doc_id] = e.score;
  return out;
}

TEST(Bm25Test, ThreeDocFixtureQueryB) {
  auto index = InvertedIndex::Build(ThreeDocs(), TokenizerConfig{});
  const auto q = Terms("b");
  EXPECT_NEAR(Bm25Score(index, q, "d1", 1.2, 0.75), 0.1442615938175646, 1e-12);
  EXPECT_NEAR(Bm25Score(index, q, "d2", 1.2, 0.75), 0.1935005809289489, 1e-12);
  EXPECT_NEAR(Bm25Score(index, q, "d3", 1.2, 0.75), 0.11623955760839735,
              1e-12);
}

TEST(Bm25Test, AbsentTermContributesNothing) {
  auto index = InvertedIndex::Build(ThreeDocs(), TokenizerConfig{});
  const auto with = Terms("b d");
  const auto without = Terms("b");
  EXPECT_DOUBLE_EQ(Bm25Score(index, with, "d1", 1.2, 0.75),
                   Bm25Score(index, without, "d1", 1.2, 0.75));
  EXPECT_EQ(Bm25Score(index, Terms("nothing here"), "d1", 1.2, 0.75), 0.0);
}

TEST(Bm25Test, ZeroK1IsIdfSum) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  for (const auto& query : FiveDocQueries()) {
    const auto terms = Terms(query.text);
    for (const auto& id : index.doc_ids()) {
      const auto doc = *index.FindDoc(id);
      double expected = 0.0;
      for (const auto& t : terms) {
        if (index.TermFreq(t, doc) > 0) {
          expected += Bm25Idf(index.doc_count(), index.DocFreq(t));
        }
      }
      EXPECT_NEAR(Bm25Score(index, terms, id, 0.0, 0.75), expected, 1e-12)
          << query.id << " " << id;
    }
  }
}

TEST(Bm25Test, IdfIsPositive) {
  for (std::size_t df = 0; df <= 10; ++df) {
    EXPECT_GT(Bm25Idf(10, df), 0.0);
  }
  EXPECT_NEAR(Bm25Idf(3, 3), std::log(0.5 / 3.5 + 1.0), 1e-15);
}

TEST(Bm25Test, MonotoneInTermFrequency) {
  std::vector<DocRecord> docs;
  for (int tf = 1; tf <= 6; ++tf) {
    std::string text;
    for (int i = 0; i < tf; ++i) text += "x ";
    for (int i = tf; i < 6; ++i) text += "pad ";
    docs.push_back({"d" + std::to_string(tf), text});
  }
  docs.push_back({"other", "y"});
  auto index = InvertedIndex::Build(docs, TokenizerConfig{});
  const auto q = Terms("x");
  for (int tf = 1; tf < 6; ++tf) {
    EXPECT_LT(Bm25Score(index, q, "d" + std::to_string(tf), 1.2, 0.75),
              Bm25Score(index, q, "d" + std::to_string(tf + 1), 1.2, 0.75));
  }
}

TEST(Bm25Test, NoLengthNormalisationWhenBIsZero) {
  std::vector<DocRecord> docs = {
      {"short", "x"}, {"long", "x a b c d e f g"}, {"none", "z"}};
  auto index = InvertedIndex::Build(docs, TokenizerConfig{});
  const auto q = Terms("x");
  EXPECT_DOUBLE_EQ(Bm25Score(index, q, "short", 1.2, 0.0),
                   Bm25Score(index, q, "long", 1.2, 0.0));
  EXPECT_GT(Bm25Score(index, q, "short", 1.2, 0.75),
            Bm25Score(index, q, "long", 1.2, 0.75));
}

TEST(Bm25Test, UnknownDocFaults) {
  auto index = InvertedIndex::Build(ThreeDocs(), TokenizerConfig{});
  EXPECT_THROW(Bm25Score(index, Terms("b"), "nope", 1.2, 0.75), DataError);
}

TEST(QlDirichletTest, ThreeDocFixture) {
  auto index = InvertedIndex::Build(ThreeDocs(), TokenizerConfig{});
  const auto q = Terms("a b");
  EXPECT_NEAR(QlDirichletScore(index, q, "d1", 100.0), -2.306862395380544,
              1e-12);
  EXPECT_NEAR(QlDirichletScore(index, q, "d2", 100.0), -2.3164607333638,
              1e-12);
  EXPECT_NEAR(QlDirichletScore(index, q, "d3", 100.0), -2.3105664858711448,
              1e-12);
}

TEST(QlDirichletTest, OovTermsAreSkippedAndCounted) {
  auto index = InvertedIndex::Build(ThreeDocs(), TokenizerConfig{});
  std::size_t oov = 0;
  const double with = QlDirichletScore(index, Terms("a zz b yy"), "d1", 100.0,
                                       &oov);
  EXPECT_EQ(oov, 2u);
  EXPECT_DOUBLE_EQ(with, QlDirichletScore(index, Terms("a b"), "d1", 100.0));
}

TEST(QlDirichletTest, MissingTermIsNegative) {
  auto index = InvertedIndex::Build(ThreeDocs(), TokenizerConfig{});
  // "d" occurs once in the collection of 11 tokens; d1 has length 3.
  const double expected = std::log(100.0 * (1.0 / 11.0) / (3.0 + 100.0));
  const double got = QlDirichletScore(index, Terms("d"), "d1", 100.0);
  EXPECT_LT(got, 0.0);
  EXPECT_NEAR(got, expected, 1e-14);
}

TEST(QlDirichletTest, UnknownDocFaults) {
  auto index = InvertedIndex::Build(ThreeDocs(), TokenizerConfig{});
  EXPECT_THROW(QlDirichletScore(index, Terms("a"), "nope", 100.0), DataError);
}

class FiveDocFixtureTest : public testing::TestWithParam<Model> {
 protected:
  InvertedIndex index_ = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
};

TEST_P(FiveDocFixtureTest, ScoresMatchHandOracle) {
  const bool bm25 = GetParam() == Model::kBm25;
  const auto config = bm25 ? Bm25Config() : QlConfig();
  const auto& oracle = bm25 ? kBm25Oracle : kQlOracle;
  for (const auto& query : FiveDocQueries()) {
    const auto got = AsScores(Rank(index_, query, config));
    const auto& want = oracle.at(query.id);
    ASSERT_EQ(got.size(), want.size()) << query.id;
    for (const auto& [doc, score] : want) {
      ASSERT_TRUE(got.count(doc)) << query.id << " " << doc;
      EXPECT_NEAR(got.at(doc), score, 1e-9) << query.id << " " << doc;
    }
  }
}

TEST_P(FiveDocFixtureTest, RankingMatchesBruteForceOverAllDocs) {
  const bool bm25 = GetParam() == Model::kBm25;
  const auto config = bm25 ? Bm25Config() : QlConfig();
  for (const auto& query : FiveDocQueries()) {
    const auto terms = Terms(query.text);
    std::vector<std::pair<double, std::string>> brute;
    for (const auto& id : index_.doc_ids()) {
      const auto doc = *index_.FindDoc(id);
      bool matches = false;
      for (const auto& t : terms) matches |= index_.TermFreq(t, doc) > 0;
      if (!matches) continue;
      const double s = bm25 ? Bm25Score(index_, terms, id, 1.2, 0.75)
                            : QlDirichletScore(index_, terms, id, 100.0);
      brute.emplace_back(-s, id);
    }
    std::sort(brute.begin(), brute.end());
    const auto ranked = Rank(index_, query, config);
    ASSERT_EQ(ranked.entries.size(), brute.size()) << query.id;
    for (std::size_t i = 0; i < brute.size(); ++i) {
      EXPECT_EQ(ranked.entries[i].doc_id, brute[i].second) << query.id;
      EXPECT_EQ(ranked.entries[i].score, -brute[i].first) << query.id;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Models, FiveDocFixtureTest,
                         testing::Values(Model::kBm25, Model::kQlDirichlet));

TEST(RankTest, NoMatchGivesEmptyList) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  RankDiagnostics diag;
  auto list = Rank(index, {"q", "unicorn", std::nullopt}, Bm25Config(), &diag);
  EXPECT_EQ(list.query_id, "q");
  EXPECT_TRUE(list.entries.empty());
  EXPECT_EQ(diag.oov_terms, 1u);
  EXPECT_TRUE(
      Rank(index, {"q", "unicorn", std::nullopt}, QlConfig()).entries.empty());
}

TEST(RankTest, SingleDocCorpus) {
  std::vector<DocRecord> docs = {{"only", "hello world"}};
  auto index = InvertedIndex::Build(docs, TokenizerConfig{});
  auto list = Rank(index, {"q", "world", std::nullopt}, Bm25Config());
  ASSERT_EQ(list.entries.size(), 1u);
  EXPECT_EQ(list.entries[0].doc_id, "only");
}

TEST(RankTest, TopKTruncates) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  auto config = Bm25Config();
  config.top_k = 2;
  auto list = Rank(index, {"q1", "quick fox", std::nullopt}, config);
  ASSERT_EQ(list.entries.size(), 2u);
  EXPECT_EQ(list.entries[0].doc_id, "d2");
  EXPECT_EQ(list.entries[1].doc_id, "d1");
}

TEST(RankTest, TiesBreakByDocId) {
  std::vector<DocRecord> docs = {{"b", "x y"}, {"a", "x y"}, {"c", "z"}};
  auto index = InvertedIndex::Build(docs, TokenizerConfig{});
  auto list = Rank(index, {"q", "x", std::nullopt}, Bm25Config());
  ASSERT_EQ(list.entries.size(), 2u);
  EXPECT_EQ(list.entries[0].doc_id, "a");
  EXPECT_EQ(list.entries[1].doc_id, "b");
}

TEST(RankTest, QlScoreAllDocsCoversTheCollection) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  auto all = QlConfig();
  all.score_all_docs = true;
  for (const auto& query : FiveDocQueries()) {
    const auto pooled = AsScores(Rank(index, query, QlConfig()));
    const auto full = AsScores(Rank(index, query, all));
    EXPECT_EQ(full.size(), index.doc_count()) << query.id;
    for (const auto& [doc, score] : pooled) {
      EXPECT_EQ(full.at(doc), score) << query.id << " " << doc;
    }
    for (const auto& [doc, score] : full) {
      if (!pooled.count(doc)) {
        EXPECT_NEAR(score,
                    QlDirichletScore(index, Terms(query.text), doc, 100.0),
                    1e-12);
      }
    }
  }
  EXPECT_TRUE(
      Rank(index, {"q", "unicorn", std::nullopt}, all).entries.empty());
}

TEST(RankTest, RankCandidatesScoresOnlyThePool) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  const auto terms = Terms("quick fox");
  const std::vector<std::string> pool = {"d5", "d3", "d1", "d5"};
  auto list = RankCandidates(index, "q1", terms, pool, Bm25Config());
  ASSERT_EQ(list.entries.size(), 3u);
  EXPECT_EQ(list.entries[0].doc_id, "d1");
  EXPECT_EQ(list.entries[1].doc_id, "d5");
  EXPECT_EQ(list.entries[2].doc_id, "d3");
  EXPECT_EQ(list.entries[2].score, 0.0);
  const std::vector<std::string> bad = {"d1", "ghost"};
  EXPECT_THROW(RankCandidates(index, "q1", terms, bad, Bm25Config()),
               DataError);
}

TEST(RankerConfigTest, Validation) {
  EXPECT_NO_THROW(Bm25Config().Validate());
  auto c = Bm25Config();
  c.k1 = 0.0;
  EXPECT_THROW(c.Validate(), UsageError);
  c = Bm25Config();
  c.b = 1.5;
  EXPECT_THROW(c.Validate(), UsageError);
  auto q = QlConfig();
  q.mu = 0.0;
  EXPECT_THROW(q.Validate(), UsageError);
  EXPECT_EQ(ParseModel("ql"), Model::kQlDirichlet);
  EXPECT_EQ(ParseModel("bm25"), Model::kBm25);
  EXPECT_THROW(ParseModel("tfidf"), UsageError);
}

}  // namespace
}  // namespace rankrobust
