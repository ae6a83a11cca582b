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


#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "rankrobust/error.hpp"
#include "rankrobust/tuning.hpp"

namespace rankrobust {
namespace {

using testing_fixtures::FiveDocQueries;
using testing_fixtures::FiveDocs;

Qrels FixtureQrels() {
  Qrels qrels;
  qrels.Add("q1", "d1", 1);
  qrels.Add("q2", "d3", 1);
  qrels.Add("q2", "d4", 1);
  qrels.Add("q3", "d3", 1);
  qrels.Add("q4", "d4", 1);
  qrels.Add("q4", "d5", 1);
  return qrels;
}

TEST(ParameterGridTest, DefaultGrids) {
  auto bm25 = ParameterGrid::Default(Model::kBm25);
  ASSERT_EQ(bm25.k1.size(), 50u);
  ASSERT_EQ(bm25.b.size(), 10u);
  EXPECT_DOUBLE_EQ(bm25.k1.front(), 0.1);
  EXPECT_DOUBLE_EQ(bm25.k1.back(), 5.0);
  EXPECT_DOUBLE_EQ(bm25.b.front(), 0.1);
  EXPECT_DOUBLE_EQ(bm25.b.back(), 1.0);
  EXPECT_EQ(bm25.Enumerate(RankerConfig{}).size(), 500u);

  auto ql = ParameterGrid::Default(Model::kQlDirichlet);
  ASSERT_EQ(ql.mu.size(), 200u);
  EXPECT_EQ(ql.mu.front(), 1.0);
  EXPECT_EQ(ql.mu[1], 11.0);
  EXPECT_EQ(ql.mu.back(), 1991.0);
}

TEST(ParameterGridTest, ParseRangesAndLists) {
  RankerConfig base;
  base.b = 0.4;
  auto grid = ParameterGrid::Parse(Model::kBm25, "k1=0.5:1.5:0.25", base);
  EXPECT_EQ(grid.k1, (std::vector<double>{0.5, 0.75, 1.0, 1.25, 1.5}));
  EXPECT_EQ(grid.b, (std::vector<double>{0.4}));
  auto listed = ParameterGrid::Parse(Model::kBm25, "k1=1.2,0.9;b=0.75", base);
  auto configs = listed.Enumerate(base);
  ASSERT_EQ(configs.size(), 2u);
  EXPECT_EQ(configs[0].k1, 0.9);
  EXPECT_EQ(configs[1].k1, 1.2);
  EXPECT_EQ(configs[1].b, 0.75);
  auto decimal = ParameterGrid::Parse(Model::kBm25, "k1=0.1:0.3:0.1", base);
  EXPECT_EQ(decimal.k1.size(), 3u);
  EXPECT_DOUBLE_EQ(decimal.k1.back(), 0.3);
}

TEST(ParameterGridTest, ParseErrors) {
  RankerConfig base;
  EXPECT_THROW(ParameterGrid::Parse(Model::kBm25, "mu=100", base), UsageError);
  EXPECT_THROW(ParameterGrid::Parse(Model::kQlDirichlet, "k1=1", base),
               UsageError);
  EXPECT_THROW(ParameterGrid::Parse(Model::kBm25, "k1", base), UsageError);
  EXPECT_THROW(ParameterGrid::Parse(Model::kBm25, "k1=a", base), UsageError);
  EXPECT_THROW(ParameterGrid::Parse(Model::kBm25, "k1=1:2:0", base),
               UsageError);
}

TEST(GridTuneTest, SingletonGrid) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  const auto queries = FiveDocQueries();
  ParameterGrid grid;
  grid.k1 = {1.1};
  grid.b = {0.3};
  auto result = GridTune(index, queries, FixtureQrels(), grid,
                         MetricSpec::Parse("map"), RankerConfig{});
  EXPECT_EQ(result.best.k1, 1.1);
  EXPECT_EQ(result.best.b, 0.3);
  EXPECT_EQ(result.trace.size(), 1u);
}

TEST(GridTuneTest, DominantConfigWins) {
  // Long documents hold the relevant term; length normalisation hurts them.
  std::vector<DocRecord> docs = {
      {"long", "x x x a b c d e f g h i j k l m n o p"},
      {"short", "x"},
      {"mid", "x y"},
  };
  auto index = InvertedIndex::Build(docs, TokenizerConfig{});
  std::vector<QueryRecord> queries = {{"q", "x", std::nullopt}};
  Qrels qrels;
  qrels.Add("q", "long", 1);
  ParameterGrid grid;
  grid.k1 = {1.2};
  grid.b = {1.0, 0.0};
  auto result = GridTune(index, queries, qrels, grid,
                         MetricSpec::Parse("mrr@10"), RankerConfig{});
  EXPECT_EQ(result.best.b, 0.0);
  EXPECT_EQ(result.objective, 1.0);
}

TEST(GridTuneTest, DefaultGridMatchesExhaustiveRecomputation) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  const auto queries = FiveDocQueries();
  const auto qrels = FixtureQrels();
  std::vector<std::string> ids;
  for (const auto& q : queries) ids.push_back(q.id);
  const auto spec = MetricSpec::Parse("ndcg@3");
  for (Model model : {Model::kBm25, Model::kQlDirichlet}) {
    RankerConfig base;
    base.model = model;
    const auto grid = ParameterGrid::Default(model);
    auto result = GridTune(index, queries, qrels, grid, spec, base, 3);

    double best = -1.0;
    RankerConfig best_config;
    for (const auto& config : grid.Enumerate(base)) {
      RunSet run;
      for (const auto& q : queries) run.lists[q.id] = Rank(index, q, config);
      const double value = Evaluate(run, qrels, spec, ids).aggregate;
      if (value > best) {
        best = value;
        best_config = config;
      }
    }
    EXPECT_EQ(result.objective, best);
    EXPECT_EQ(result.best, best_config);
    EXPECT_EQ(result.trace.size(), grid.Enumerate(base).size());
  }
}

TEST(GridTuneTest, EmptyQuerySetFaults) {
  auto index = InvertedIndex::Build(FiveDocs(), TokenizerConfig{});
  std::vector<QueryRecord> none;
  EXPECT_THROW(GridTune(index, none, FixtureQrels(),
                        ParameterGrid::Default(Model::kBm25), MetricSpec{},
                        RankerConfig{}),
               DataError);
}

}  // namespace
}  // namespace rankrobust
