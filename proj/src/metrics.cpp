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

#include "rankrobust/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "rankrobust/error.hpp"

namespace rankrobust {
namespace {

// Grades of the first `depth` ranks; repeated doc ids get grade 0.
std::vector<int> GradesByRank(const RankedList& list, const Qrels& qrels,
                              std::string_view query_id, std::size_t depth) {
  const auto& judged = qrels.ForQuery(query_id);
  const std::size_t n = std::min(depth, list.entries.size());
  std::vector<int> grades(n, 0);
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& doc = list.entries[i].doc_id;
    if (!seen.insert(doc).second) continue;
    auto it = judged.find(doc);
    if (it != judged.end()) grades[i] = it->second;
  }
  return grades;
}

double Mean(const PerQuery& values) {
  double sum = 0.0;
  for (const auto& [qid, v] : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double Gain(int grade) { return std::exp2(static_cast<double>(grade)) - 1.0; }

double Discount(std::size_t rank) {
  return std::log2(static_cast<double>(rank) + 1.0);
}

std::uint64_t CountInversions(std::vector<std::uint32_t>& v,
                              std::vector<std::uint32_t>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = CountInversions(v, scratch, lo, mid) +
                        CountInversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
  return count;
}

std::string JoinIds(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

// Continued fraction for the incomplete beta (modified Lentz).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

MetricSpec MetricSpec::Parse(std::string_view text) {
  const auto at = text.find('@');
  const std::string_view name = text.substr(0, at);
  MetricSpec spec;
  if (name == "map" || name == "ap") {
    spec.name = MetricName::kAp;
  } else if (name == "p") {
    spec.name = MetricName::kPrecision;
  } else if (name == "r") {
    spec.name = MetricName::kRecall;
  } else if (name == "ndcg") {
    spec.name = MetricName::kNdcg;
  } else if (name == "mrr") {
    spec.name = MetricName::kMrr;
  } else {
    throw UsageError("unknown metric '" + std::string(text) + "'");
  }
  if (at != std::string_view::npos) {
    const std::string_view digits = text.substr(at + 1);
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(),
                                     digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k <= 0) {
      throw UsageError("bad cutoff in metric '" + std::string(text) + "'");
    }
    // AP always runs over the full list.
    if (spec.name != MetricName::kAp) spec.cutoff = k;
  } else if (spec.name != MetricName::kAp) {
    throw UsageError("metric '" + std::string(text) + "' needs a cutoff");
  }
  return spec;
}

std::string MetricSpec::ToString() const {
  std::string base;
  switch (name) {
    case MetricName::kAp: return "map";
    case MetricName::kPrecision: base = "p"; break;
    case MetricName::kRecall: base = "r"; break;
    case MetricName::kNdcg: base = "ndcg"; break;
    case MetricName::kMrr: base = "mrr"; break;
  }
  return base + "@" + std::to_string(cutoff.value_or(0));
}

std::optional<double> AveragePrecision(const RankedList& list,
                                       const Qrels& qrels,
                                       std::string_view query_id) {
  const std::size_t relevant = qrels.RelevantCount(query_id);
  if (relevant == 0) return std::nullopt;
  const auto grades = GradesByRank(list, qrels, query_id, list.entries.size());
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (grades[i] <= 0) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(relevant);
}

double PrecisionAtK(const RankedList& list, const Qrels& qrels,
                    std::string_view query_id, int k) {
  if (k <= 0) throw UsageError("cutoff must be positive");
  const auto grades = GradesByRank(list, qrels, query_id, k);
  const auto hits = std::count_if(grades.begin(), grades.end(),
                                  [](int g) { return g > 0; });
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::optional<double> RecallAtK(const RankedList& list, const Qrels& qrels,
                                std::string_view query_id, int k) {
  if (k <= 0) throw UsageError("cutoff must be positive");
  const std::size_t relevant = qrels.RelevantCount(query_id);
  if (relevant == 0) return std::nullopt;
  const auto grades = GradesByRank(list, qrels, query_id, k);
  const auto hits = std::count_if(grades.begin(), grades.end(),
                                  [](int g) { return g > 0; });
  return static_cast<double>(hits) / static_cast<double>(relevant);
}

double ReciprocalRankAtK(const RankedList& list, const Qrels& qrels,
                         std::string_view query_id, int k) {
  if (k <= 0) throw UsageError("cutoff must be positive");
  const auto grades = GradesByRank(list, qrels, query_id, k);
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (grades[i] > 0) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

std::optional<double> NdcgAtK(const RankedList& list, const Qrels& qrels,
                              std::string_view query_id, int k) {
  if (k <= 0) throw UsageError("cutoff must be positive");
  std::vector<int> ideal;
  for (const auto& [doc, grade] : qrels.ForQuery(query_id)) {
    if (grade > 0) ideal.push_back(grade);
  }
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  if (ideal.size() > static_cast<std::size_t>(k)) ideal.resize(k);
  double idcg = 0.0;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    idcg += Gain(ideal[i]) / Discount(i + 1);
  }
  if (idcg <= 0.0) return std::nullopt;
  const auto grades = GradesByRank(list, qrels, query_id, k);
  double dcg = 0.0;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (grades[i] > 0) dcg += Gain(grades[i]) / Discount(i + 1);
  }
  return dcg / idcg;
}

std::optional<double> EvaluateQuery(const MetricSpec& spec,
                                    const RankedList* list, const Qrels& qrels,
                                    std::string_view query_id) {
  static const RankedList kEmpty;
  const RankedList& l = list ? *list : kEmpty;
  const int k = spec.cutoff.value_or(0);
  switch (spec.name) {
    case MetricName::kAp: return AveragePrecision(l, qrels, query_id);
    case MetricName::kPrecision: return PrecisionAtK(l, qrels, query_id, k);
    case MetricName::kRecall: return RecallAtK(l, qrels, query_id, k);
    case MetricName::kNdcg: return NdcgAtK(l, qrels, query_id, k);
    case MetricName::kMrr: return ReciprocalRankAtK(l, qrels, query_id, k);
  }
  return std::nullopt;
}

std::vector<std::string> EvaluableQueries(const Qrels& qrels) {
  std::vector<std::string> ids;
  for (const auto& [qid, docs] : qrels.all()) {
    if (qrels.RelevantCount(qid) > 0) ids.push_back(qid);
  }
  return ids;
}

MetricReport Evaluate(const RunSet& run, const Qrels& qrels,
                      const MetricSpec& spec,
                      std::span<const std::string> query_ids) {
  MetricReport report;
  report.metric_name = spec.ToString();
  report.cutoff = spec.cutoff;
  for (const auto& qid : query_ids) {
    if (qrels.RelevantCount(qid) == 0) {
      report.skipped.push_back(qid);
      continue;
    }
    auto value = EvaluateQuery(spec, run.Find(qid), qrels, qid);
    if (value) {
      report.per_query[qid] = *value;
    } else {
      report.skipped.push_back(qid);
    }
  }
  std::sort(report.skipped.begin(), report.skipped.end());
  report.skipped.erase(std::unique(report.skipped.begin(), report.skipped.end()),
                       report.skipped.end());
  if (report.per_query.empty()) {
    throw DataError("no evaluable query for " + report.metric_name +
                    ": every query lacks relevant documents");
  }
  report.aggregate = Mean(report.per_query);
  return report;
}

PerQuery NapValues(const PerQuery& ap_per_query) {
  if (ap_per_query.empty()) throw DataError("VNAP undefined: no queries");
  const double mean = Mean(ap_per_query);
  if (!(mean > 0.0)) throw DataError("VNAP undefined: zero mean AP");
  PerQuery nap;
  for (const auto& [qid, ap] : ap_per_query) nap[qid] = ap / mean;
  return nap;
}

double Vnap(const PerQuery& ap_per_query) {
  return VarianceOfMetric(NapValues(ap_per_query));
}

double Gmap(const PerQuery& ap_per_query, double epsilon) {
  if (ap_per_query.empty()) throw DataError("gMAP undefined: no queries");
  if (!(epsilon > 0.0)) throw UsageError("gMAP epsilon must be positive");
  double log_sum = 0.0;
  for (const auto& [qid, ap] : ap_per_query) log_sum += std::log(ap + epsilon);
  return std::exp(log_sum / static_cast<double>(ap_per_query.size())) -
         epsilon;
}

double PctNo(const RunSet& run, const Qrels& qrels,
             std::span<const std::string> query_ids) {
  if (query_ids.empty()) return 0.0;
  static const RankedList kEmpty;
  std::size_t failing = 0;
  for (const auto& qid : query_ids) {
    const RankedList* list = run.Find(qid);
    const auto grades =
        GradesByRank(list ? *list : kEmpty, qrels, qid, kPctNoDepth);
    if (std::none_of(grades.begin(), grades.end(),
                     [](int g) { return g > 0; })) {
      ++failing;
    }
  }
  return static_cast<double>(failing) / static_cast<double>(query_ids.size());
}

double VarianceOfMetric(const PerQuery& per_query) {
  if (per_query.empty()) throw DataError("variance undefined: no values");
  // Deviations are taken from the first value so that identical inputs give
  // exactly zero rather than rounding noise from the mean.
  const double shift = per_query.begin()->second;
  const double n = static_cast<double>(per_query.size());
  double mean = 0.0;
  for (const auto& [qid, v] : per_query) mean += v - shift;
  mean /= n;
  double sum = 0.0;
  for (const auto& [qid, v] : per_query) {
    const double d = v - shift - mean;
    sum += d * d;
  }
  return sum / n;
}

double DropRate(double treated, double baseline) {
  if (baseline == 0.0) throw DataError("drop rate undefined: zero baseline");
  return (treated - baseline) / baseline;
}

void AddRobustnessExtras(MetricReport& report, const RunSet& run,
                         const Qrels& qrels,
                         std::span<const std::string> query_ids,
                         double epsilon) {
  PerQuery ap;
  std::vector<std::string> evaluated;
  for (const auto& qid : query_ids) {
    const RankedList* list = run.Find(qid);
    auto value = EvaluateQuery(MetricSpec{}, list, qrels, qid);
    if (!value) continue;
    ap[qid] = *value;
    evaluated.push_back(qid);
  }
  if (!ap.empty()) {
    report.extras["map"] = Mean(ap);
    report.extras["gmap"] = Gmap(ap, epsilon);
    if (Mean(ap) > 0.0) report.extras["vnap"] = Vnap(ap);
  }
  report.extras["pct_no"] = PctNo(run, qrels, evaluated);
  if (!report.per_query.empty()) {
    report.extras["variance"] = VarianceOfMetric(report.per_query);
  }
}

TopChangeResult TopChange(const RunSet& before, const RunSet& after) {
  TopChangeResult result;
  for (const auto& [qid, list] : before.lists) {
    const RankedList* other = after.Find(qid);
    if (!other) continue;
    if (list.entries.empty() || other->entries.empty()) {
      result.skipped.push_back(qid);
      continue;
    }
    result.per_query[qid] =
        list.entries.front().doc_id != other->entries.front().doc_id ? 1 : 0;
  }
  if (result.per_query.empty()) {
    throw DataError("top change undefined: no query with both lists non-empty");
  }
  double sum = 0.0;
  for (const auto& [qid, changed] : result.per_query) sum += changed;
  result.value = sum / static_cast<double>(result.per_query.size());
  return result;
}

double KendallTauDistance(const RankedList& before, const RankedList& after) {
  std::unordered_map<std::string_view, std::uint32_t> position;
  for (std::size_t i = 0; i < before.entries.size(); ++i) {
    if (!position.emplace(before.entries[i].doc_id,
                          static_cast<std::uint32_t>(i))
             .second) {
      throw DataError("duplicate doc id " + before.entries[i].doc_id +
                      " in list for query " + before.query_id);
    }
  }
  const std::size_t n = before.entries.size();
  std::vector<std::uint32_t> sequence;
  sequence.reserve(after.entries.size());
  std::set<std::string> only_after;
  std::unordered_set<std::string_view> seen_after;
  for (const auto& entry : after.entries) {
    if (!seen_after.insert(entry.doc_id).second) {
      throw DataError("duplicate doc id " + entry.doc_id +
                      " in list for query " + after.query_id);
    }
    auto it = position.find(entry.doc_id);
    if (it == position.end()) {
      only_after.insert(entry.doc_id);
    } else {
      sequence.push_back(it->second);
    }
  }
  if (!only_after.empty() || sequence.size() != n) {
    std::set<std::string> diff = only_after;
    for (const auto& entry : before.entries) {
      if (!seen_after.contains(entry.doc_id)) diff.insert(entry.doc_id);
    }
    throw DataError("lists hold different documents; symmetric difference: " +
                    JoinIds({diff.begin(), diff.end()}));
  }
  if (n < 2) throw DataError("Kendall's tau distance needs at least 2 docs");
  std::vector<std::uint32_t> scratch(n);
  const std::uint64_t discordant = CountInversions(sequence, scratch, 0, n);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(discordant) / pairs;
}

std::pair<RankedList, RankedList> RestrictToCommonDocs(const RankedList& a,
                                                       const RankedList& b) {
  std::unordered_set<std::string_view> in_a, in_b;
  for (const auto& e : a.entries) in_a.insert(e.doc_id);
  for (const auto& e : b.entries) in_b.insert(e.doc_id);
  RankedList ra{a.query_id, {}};
  RankedList rb{b.query_id, {}};
  for (const auto& e : a.entries) {
    if (in_b.contains(e.doc_id)) ra.entries.push_back(e);
  }
  for (const auto& e : b.entries) {
    if (in_a.contains(e.doc_id)) rb.entries.push_back(e);
  }
  return {std::move(ra), std::move(rb)};
}

ListDistanceResult CompareRuns(const RunSet& before, const RunSet& after) {
  ListDistanceResult result;
  for (const auto& [qid, list] : before.lists) {
    const RankedList* other = after.Find(qid);
    if (!other) continue;
    if (list.entries.empty() || other->entries.empty()) {
      result.skipped.push_back(qid);
      continue;
    }
    auto [a, b] = RestrictToCommonDocs(list, *other);
    if (a.entries.size() < 2) {
      result.skipped.push_back(qid);
      continue;
    }
    ListDistance d;
    d.tc = list.entries.front().doc_id != other->entries.front().doc_id;
    d.kt = KendallTauDistance(a, b);
    result.per_query[qid] = d;
  }
  if (result.per_query.empty()) {
    throw DataError("no query is comparable between the two runs");
  }
  double tc = 0.0, kt = 0.0;
  for (const auto& [qid, d] : result.per_query) {
    tc += d.tc;
    kt += d.kt;
  }
  const auto n = static_cast<double>(result.per_query.size());
  result.tc = tc / n;
  result.kt = kt / n;
  return result;
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (!(df > 0.0)) throw UsageError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(RegularizedIncompleteBeta(df / 2.0, 0.5, x), 0.0, 1.0);
}

PairedTTest PairedTTestOn(const PerQuery& a, const PerQuery& b) {
  std::vector<double> diffs;
  for (const auto& [qid, va] : a) {
    auto it = b.find(qid);
    if (it != b.end()) diffs.push_back(va - it->second);
  }
  if (diffs.size() < 2) {
    throw DataError("paired test needs at least 2 shared queries, got " +
                    std::to_string(diffs.size()));
  }
  PairedTTest test;
  test.n = diffs.size();
  const double n = static_cast<double>(diffs.size());
  double sum = 0.0;
  for (double d : diffs) sum += d;
  test.mean_difference = sum / n;
  const bool constant = std::all_of(diffs.begin(), diffs.end(),
                                    [&](double d) { return d == diffs[0]; });
  if (constant) {
    test.mean_difference = diffs[0];
    test.t = diffs[0] == 0.0 ? 0.0
                             : std::copysign(
                                   std::numeric_limits<double>::infinity(),
                                   diffs[0]);
    test.p_value = diffs[0] == 0.0 ? 1.0 : 0.0;
    return test;
  }
  double ss = 0.0;
  for (double d : diffs) {
    ss += (d - test.mean_difference) * (d - test.mean_difference);
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  test.t = test.mean_difference / (sd / std::sqrt(n));
  test.p_value = StudentTTwoSidedP(test.t, n - 1.0);
  return test;
}

double PairedSignificance(const PerQuery& a, const PerQuery& b) {
  return PairedTTestOn(a, b).p_value;
}

}  // namespace rankrobust
