// Copyright 2026 The wlra Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WLRA_TOOLS_BENCH_HPP_
#define WLRA_TOOLS_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "wlra/generator.hpp"
#include "wlra/grouped_als.hpp"

namespace wlra::tools {

inline constexpr const char* kBenchCsvHeader =
    "n,r,p,k,eps,sweep,wall_s,cost,regressions,seed";

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::size_t r = 4;
  std::size_t p = 4;
  std::size_t k = 3;
  double eps = 0.25;
  std::size_t sweeps = 3;
  std::size_t trials = 3;
  uint64_t seed = 0;
  double noise = 0.05;
  WeightStyle style = WeightStyle::kBlockRandom;
  bool dense_baseline = false;
  bool sketchless = false;
  int threads = 1;
};

struct BenchPoint {
  std::size_t n = 0;
  double median_sweep_seconds = 0.0;
  std::size_t max_regressions_per_half = 0;
  std::size_t wa_groups = 0;  // max(#W∘A row groups, #W∘A col groups)
};

struct BenchResult {
  std::vector<BenchPoint> points;
  std::optional<double> slope;  // empty when fewer than two sizes remain
};

/// Least-squares slope of log2(seconds) against log2(n) after dropping the
/// smallest size as warm-up.
std::optional<double> fit_loglog_slope(const std::vector<std::size_t>& sizes,
                                       const std::vector<double>& seconds);

/// One CSV row per half-sweep goes to `csv` (header included) when given.
BenchResult run_bench(const BenchConfig& config, std::ostream* csv);

}  // namespace wlra::tools

#endif  // WLRA_TOOLS_BENCH_HPP_
