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

#ifndef RANKROBUST_TUNING_HPP_
#define RANKROBUST_TUNING_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rankrobust/index.hpp"
#include "rankrobust/metrics.hpp"
#include "rankrobust/rankers.hpp"
#include "rankrobust/types.hpp"

namespace rankrobust {

// Values per parameter. Only the lists belonging to `model` are used.
struct ParameterGrid {
  Model model = Model::kBm25;
  std::vector<double> k1;
  std::vector<double> b;
  std::vector<double> mu;

  // BM25: k1 = 0.1, 0.2, ..., 5.0 crossed with b = 0.1, ..., 1.0.
  // QL:   mu = 1, 11, 21, ..., 1991.
  static ParameterGrid Default(Model model);

  // Parses "k1=0.5:1.5:0.1;b=0.75" style specs: each parameter is either a
  // comma list or start:stop:step (inclusive). Parameters not named keep
  // the single value from `base`. Throws UsageError on bad syntax or on a
  // parameter that does not belong to the model.
  static ParameterGrid Parse(Model model, std::string_view text,
                             const RankerConfig& base);

  // All configurations in ascending parameter order, k1 outermost for
  // BM25. Values are sorted and de-duplicated first.
  std::vector<RankerConfig> Enumerate(const RankerConfig& base) const;
};

struct GridPoint {
  RankerConfig config;
  double objective = 0.0;
};

struct TuneResult {
  RankerConfig best;
  double objective = 0.0;
  std::vector<GridPoint> trace;  // every grid point, in enumeration order
};

// Exhaustive search maximizing the mean objective over the queries that
// have relevant documents. Ties keep the earliest grid point. Throws
// DataError on an empty query set and UsageError on an empty grid.
TuneResult GridTune(const InvertedIndex& index,
                    std::span<const QueryRecord> queries, const Qrels& qrels,
                    const ParameterGrid& grid, const MetricSpec& objective,
                    const RankerConfig& base, std::size_t threads = 1);

}  // namespace rankrobust

#endif  // RANKROBUST_TUNING_HPP_
