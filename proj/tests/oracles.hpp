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

// Test-only reference implementations. These are written straight from the
// textbook definitions and share no code with the library paths they check.

#ifndef RANKROBUST_TESTS_ORACLES_HPP_
#define RANKROBUST_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace oracle {

// Judged grades for one query.
using Grades = std::map<std::string, int>;

inline int GradeOf(const Grades& g, const std::string& doc) {
  auto it = g.find(doc);
  return it == g.end() ? 0 : it->second;
}

inline int RelevantTotal(const Grades& g) {
  int r = 0;
  for (const auto& [d, grade] : g) r += grade > 0;
  return r;
}

// AP = (1/R) * sum over relevant docs k of (1/o_k) * #relevant at ranks <= o_k.
// Relevant docs that were not retrieved contribute 0.
inline double AveragePrecision(const std::vector<std::string>& ranking,
                               const Grades& g) {
  const int r = RelevantTotal(g);
  double total = 0.0;
  for (const auto& [doc, grade] : g) {
    if (grade <= 0) continue;
    auto it = std::find(ranking.begin(), ranking.end(), doc);
    if (it == ranking.end()) continue;
    const int o = static_cast<int>(it - ranking.begin()) + 1;
    int rel_above = 0;
    for (int n = 1; n <= o; ++n) rel_above += GradeOf(g, ranking[n - 1]) > 0;
    total += static_cast<double>(rel_above) / o;
  }
  return total / r;
}

inline int RelevantInTop(const std::vector<std::string>& ranking,
                         const Grades& g, int k) {
  int hits = 0;
  for (int i = 0; i < k && i < static_cast<int>(ranking.size()); ++i) {
    hits += GradeOf(g, ranking[i]) > 0;
  }
  return hits;
}

inline double Precision(const std::vector<std::string>& ranking,
                        const Grades& g, int k) {
  return static_cast<double>(RelevantInTop(ranking, g, k)) / k;
}

inline double Recall(const std::vector<std::string>& ranking, const Grades& g,
                     int k) {
  return static_cast<double>(RelevantInTop(ranking, g, k)) / RelevantTotal(g);
}

inline double ReciprocalRank(const std::vector<std::string>& ranking,
                             const Grades& g, int k) {
  for (int i = 0; i < k && i < static_cast<int>(ranking.size()); ++i) {
    if (GradeOf(g, ranking[i]) > 0) return 1.0 / (i + 1);
  }
  return 0.0;
}

inline double Ndcg(const std::vector<std::string>& ranking, const Grades& g,
                   int k) {
  double dcg = 0.0;
  for (int i = 0; i < k && i < static_cast<int>(ranking.size()); ++i) {
    dcg += (std::pow(2.0, GradeOf(g, ranking[i])) - 1.0) / std::log2(i + 2.0);
  }
  std::vector<int> ideal;
  for (const auto& [d, grade] : g) ideal.push_back(grade);
  std::sort(ideal.rbegin(), ideal.rend());
  double idcg = 0.0;
  for (int i = 0; i < k && i < static_cast<int>(ideal.size()); ++i) {
    idcg += (std::pow(2.0, ideal[i]) - 1.0) / std::log2(i + 2.0);
  }
  return dcg / idcg;
}

// Enumerates all n(n-1)/2 pairs.
inline double KendallTauPairs(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
  const std::size_t n = a.size();
  std::map<std::string, int> rank_b;
  for (std::size_t i = 0; i < b.size(); ++i) rank_b[b[i]] = static_cast<int>(i);
  long discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int da = static_cast<int>(i) - static_cast<int>(j);
      const int db = rank_b[a[i]] - rank_b[a[j]];
      if (static_cast<long>(da) * db < 0) ++discordant;
    }
  }
  return static_cast<double>(discordant) / (n * (n - 1) / 2.0);
}

// Optimal string alignment distance: Levenshtein plus adjacent
// transposition, all at cost 1.
inline std::size_t OsaDistance(const std::string& s, const std::string& t) {
  const std::size_t n = s.size(), m = t.size();
  std::vector<std::vector<std::size_t>> d(n + 1,
                                          std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = s[i - 1] == t[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && s[i - 1] == t[j - 2] && s[i - 2] == t[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[n][m];
}

// Unrestricted Damerau-Levenshtein distance (Lowrance-Wagner). Unlike OSA it
// is a metric, so k stacked single edits are always within distance k.
inline std::size_t DamerauDistance(const std::string& s, const std::string& t) {
  const std::size_t n = s.size(), m = t.size(), inf = n + m;
  std::vector<std::vector<std::size_t>> d(n + 2,
                                          std::vector<std::size_t>(m + 2));
  d[0][0] = inf;
  for (std::size_t i = 0; i <= n; ++i) {
    d[i + 1][0] = inf;
    d[i + 1][1] = i;
  }
  for (std::size_t j = 0; j <= m; ++j) {
    d[0][j + 1] = inf;
    d[1][j + 1] = j;
  }
  std::map<char, std::size_t> last_row;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t last_col = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const auto it = last_row.find(t[j - 1]);
      const std::size_t i1 = it == last_row.end() ? 0 : it->second;
      const std::size_t j1 = last_col;
      std::size_t cost = 1;
      if (s[i - 1] == t[j - 1]) {
        cost = 0;
        last_col = j;
      }
      d[i + 1][j + 1] = std::min({d[i][j] + cost, d[i + 1][j] + 1,
                                  d[i][j + 1] + 1,
                                  d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1)});
    }
    last_row[s[i - 1]] = i;
  }
  return d[n + 1][m + 1];
}

// Two-sided paired t-test p-value via Boost.Math's Student's t.
inline double PairedTTestP(const std::vector<double>& a,
                           const std::vector<double>& b) {
  const std::size_t n = a.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  const double se = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
  const double t = mean / se;
  boost::math::students_t dist(static_cast<double>(n - 1));
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace oracle

#endif  // RANKROBUST_TESTS_ORACLES_HPP_
