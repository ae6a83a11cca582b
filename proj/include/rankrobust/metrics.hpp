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

// Effectiveness and robustness metrics.
//
// Relevance is binary (grade > 0) everywhere except the NDCG gain, which
// uses 2^grade - 1 with a log2(rank + 1) discount. A doc id repeated within
// a list only counts at its first rank.

#ifndef RANKROBUST_METRICS_HPP_
#define RANKROBUST_METRICS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankrobust/types.hpp"

namespace rankrobust {

using PerQuery = std::map<std::string, double>;

inline constexpr double kDefaultGmapEpsilon = 1e-5;
inline constexpr std::size_t kPctNoDepth = 10;

enum class MetricName { kAp, kPrecision, kRecall, kNdcg, kMrr };

struct MetricSpec {
  MetricName name = MetricName::kAp;
  std::optional<int> cutoff;

  // Accepts "map" / "ap", "p@k", "r@k", "ndcg@k", "mrr@k". Throws
  // UsageError on an unknown name or a missing/non-positive cutoff.
  static MetricSpec Parse(std::string_view text);
  // Canonical name: "map", "p@10", "ndcg@20", ...
  std::string ToString() const;

  bool operator==(const MetricSpec&) const = default;
};

// --- Per-query metrics ------------------------------------------------------

// Null when the query has no relevant document.
std::optional<double> AveragePrecision(const RankedList& list,
                                       const Qrels& qrels,
                                       std::string_view query_id);
double PrecisionAtK(const RankedList& list, const Qrels& qrels,
                    std::string_view query_id, int k);
// Null when the query has no relevant document.
std::optional<double> RecallAtK(const RankedList& list, const Qrels& qrels,
                                std::string_view query_id, int k);
// Reciprocal rank of the first relevant document within the top k, else 0.
double ReciprocalRankAtK(const RankedList& list, const Qrels& qrels,
                         std::string_view query_id, int k);
// Null when the ideal DCG is 0.
std::optional<double> NdcgAtK(const RankedList& list, const Qrels& qrels,
                              std::string_view query_id, int k);

// Dispatches on spec. A null list is evaluated as an empty ranking.
std::optional<double> EvaluateQuery(const MetricSpec& spec,
                                    const RankedList* list, const Qrels& qrels,
                                    std::string_view query_id);

// Evaluates every query in `query_ids` (a query missing from the run counts
// as an empty ranking). Queries without a relevant document are skipped for
// every metric so reports over the same qrels pair up query for query. The
// aggregate is the mean of the per-query values, folded in query-id order.
// Throws DataError if every query is skipped.
MetricReport Evaluate(const RunSet& run, const Qrels& qrels,
                      const MetricSpec& spec,
                      std::span<const std::string> query_ids);

// Query ids of `qrels` that have at least one relevant document.
std::vector<std::string> EvaluableQueries(const Qrels& qrels);

// --- Robustness aggregates --------------------------------------------------

// AP / mean AP per query. Throws DataError when the mean AP is 0 or the
// profile is empty.
PerQuery NapValues(const PerQuery& ap_per_query);

// Population variance of NAP values.
double Vnap(const PerQuery& ap_per_query);

// exp(mean(ln(AP + epsilon))) - epsilon. Throws DataError when empty or
// epsilon <= 0.
double Gmap(const PerQuery& ap_per_query,
            double epsilon = kDefaultGmapEpsilon);

// Fraction of `query_ids` whose top 10 holds no relevant document. Missing
// and empty lists count as having none. 0 for an empty query set.
double PctNo(const RunSet& run, const Qrels& qrels,
             std::span<const std::string> query_ids);

// Population variance of raw per-query values. Throws DataError when empty.
double VarianceOfMetric(const PerQuery& per_query);

// (treated - baseline) / baseline. Throws DataError when baseline is 0.
double DropRate(double treated, double baseline);

// Adds map, vnap, gmap, pct_no and variance to report.extras. vnap is left
// out when the mean AP is 0.
void AddRobustnessExtras(MetricReport& report, const RunSet& run,
                         const Qrels& qrels,
                         std::span<const std::string> query_ids,
                         double epsilon = kDefaultGmapEpsilon);

// --- List distances -----------------------------------------------------

struct TopChangeResult {
  double value = 0.0;
  std::map<std::string, int> per_query;
  std::vector<std::string> skipped;
};

// Compares rank-1 documents over the queries both runs share. Queries with
// an empty list on either side are skipped. Throws DataError when no query
// is comparable.
TopChangeResult TopChange(const RunSet& before, const RunSet& after);

// Normalized count of discordant pairs, O(n log n). Both lists must hold
// the same set of n >= 2 distinct doc ids; otherwise throws DataError
// naming the symmetric difference.
double KendallTauDistance(const RankedList& before, const RankedList& after);

// Copies of both lists keeping only docs present in both, in original order.
std::pair<RankedList, RankedList> RestrictToCommonDocs(const RankedList& a,
                                                       const RankedList& b);

struct ListDistance {
  int tc = 0;
  double kt = 0.0;
};

struct ListDistanceResult {
  double tc = 0.0;
  double kt = 0.0;
  std::map<std::string, ListDistance> per_query;
  std::vector<std::string> skipped;
};

// TC and KT per shared query, KT over the docs both lists contain. Queries
// with an empty side or fewer than two common docs are skipped. Throws
// DataError when nothing is comparable.
ListDistanceResult CompareRuns(const RunSet& before, const RunSet& after);

// --- Significance -------------------------------------------------------

struct PairedTTest {
  std::size_t n = 0;
  double mean_difference = 0.0;
  double t = 0.0;
  double p_value = 1.0;
};

// Two-sided paired t-test over the shared query ids (a - b). When every
// difference is identical the test is degenerate: p = 1 if the difference
// is 0, else p = 0. Throws DataError with fewer than two shared queries.
PairedTTest PairedTTestOn(const PerQuery& a, const PerQuery& b);
double PairedSignificance(const PerQuery& a, const PerQuery& b);

// Two-sided tail probability P(|T| >= |t|) for Student's t with `df`
// degrees of freedom.
double StudentTTwoSidedP(double t, double df);

// Regularized incomplete beta I_x(a, b).
double RegularizedIncompleteBeta(double a, double b, double x);

}  // namespace rankrobust

#endif  // RANKROBUST_METRICS_HPP_
