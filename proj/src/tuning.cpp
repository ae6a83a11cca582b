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

#include "rankrobust/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankrobust/error.hpp"
#include "rankrobust/parallel.hpp"

namespace rankrobust {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double ParseNumber(std::string_view text) {
  const std::string s(Trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "' in grid");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw UsageError("bad number '" + s + "' in grid");
  }
  return v;
}

// Snaps accumulated floating error so 0.1 + 2 * 0.1 lands on 0.3.
double Snap(double v) { return std::round(v * 1e12) / 1e12; }

std::vector<double> ParseValues(std::string_view text) {
  std::vector<double> values;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(ParseNumber(text.substr(start, colon - start)));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw UsageError("range must be start:stop:step with step > 0 and "
                       "stop >= start");
    }
    const auto count = static_cast<std::size_t>(
        std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      values.push_back(Snap(parts[0] + static_cast<double>(i) * parts[2]));
    }
    return values;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(ParseNumber(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

std::vector<double> SortedUnique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ParameterGrid ParameterGrid::Default(Model model) {
  ParameterGrid grid;
  grid.model = model;
  if (model == Model::kBm25) {
    for (int i = 1; i <= 50; ++i) grid.k1.push_back(i / 10.0);
    for (int i = 1; i <= 10; ++i) grid.b.push_back(i / 10.0);
  } else {
    for (int mu = 1; mu <= 2000; mu += 10) grid.mu.push_back(mu);
  }
  return grid;
}

ParameterGrid ParameterGrid::Parse(Model model, std::string_view text,
                                   const RankerConfig& base) {
  ParameterGrid grid;
  grid.model = model;
  grid.k1 = {base.k1};
  grid.b = {base.b};
  grid.mu = {base.mu};
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const auto item = Trim(text.substr(start, semi - start));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw UsageError("grid entry '" + std::string(item) +
                         "' is not name=values");
      }
      const auto name = Trim(item.substr(0, eq));
      auto values = ParseValues(item.substr(eq + 1));
      const bool bm25 = model == Model::kBm25;
      if (name == "k1" && bm25) {
        grid.k1 = std::move(values);
      } else if (name == "b" && bm25) {
        grid.b = std::move(values);
      } else if (name == "mu" && !bm25) {
        grid.mu = std::move(values);
      } else {
        throw UsageError("parameter '" + std::string(name) +
                         "' does not apply to " +
                         std::string(ModelName(model)));
      }
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return grid;
}

std::vector<RankerConfig> ParameterGrid::Enumerate(
    const RankerConfig& base) const {
  std::vector<RankerConfig> configs;
  RankerConfig config = base;
  config.model = model;
  if (model == Model::kBm25) {
    for (double k1_value : SortedUnique(k1)) {
      for (double b_value : SortedUnique(b)) {
        config.k1 = k1_value;
        config.b = b_value;
        configs.push_back(config);
      }
    }
  } else {
    for (double mu_value : SortedUnique(mu)) {
      config.mu = mu_value;
      configs.push_back(config);
    }
  }
  return configs;
}

TuneResult GridTune(const InvertedIndex& index,
                    std::span<const QueryRecord> queries, const Qrels& qrels,
                    const ParameterGrid& grid, const MetricSpec& objective,
                    const RankerConfig& base, std::size_t threads) {
  if (queries.empty()) throw DataError("cannot tune on an empty query set");
  const auto configs = grid.Enumerate(base);
  if (configs.empty()) throw UsageError("parameter grid is empty");
  for (const auto& c : configs) c.Validate();

  std::vector<std::vector<std::string>> terms(queries.size());
  std::vector<std::string> query_ids;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    terms[i] = Tokenize(queries[i].text, index.tokenizer_config());
    query_ids.push_back(queries[i].id);
  }

  TuneResult result;
  std::vector<RankedList> lists(queries.size());
  for (const auto& config : configs) {
    ParallelFor(queries.size(), threads, [&](std::size_t i) {
      lists[i] = RankTerms(index, queries[i].id, terms[i], config);
    });
    RunSet run;
    for (auto& list : lists) run.lists[list.query_id] = std::move(list);
    const double value =
        Evaluate(run, qrels, objective, query_ids).aggregate;
    result.trace.push_back({config, value});
    if (result.trace.size() == 1 || value > result.objective) {
      result.best = config;
      result.objective = value;
    }
  }
  return result;
}

}  // namespace rankrobust
