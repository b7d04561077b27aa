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

#include "bench.hpp"

#include <algorithm>
#include <cmath>

#include "wlra/random.hpp"

namespace wlra::tools {
namespace {

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size();
  if (m == 0) return 0.0;
  return m % 2 == 1 ? xs[m / 2] : 0.5 * (xs[m / 2 - 1] + xs[m / 2]);
}

}  // namespace

std::optional<double> fit_loglog_slope(const std::vector<std::size_t>& sizes,
                                       const std::vector<double>& seconds) {
  if (sizes.size() != seconds.size()) throw InvalidInput("slope fit: length mismatch");
  if (sizes.size() < 3) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(sizes.size() - 1);
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const double x = std::log2(static_cast<double>(sizes[i]));
    const double y = std::log2(std::max(seconds[i], 1e-12));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  return (m * sxy - sx * sy) / denom;
}

BenchResult run_bench(const BenchConfig& config, std::ostream* csv) {
  if (config.sizes.empty()) throw InvalidInput("bench: no sizes given");
  if (!std::is_sorted(config.sizes.begin(), config.sizes.end()) ||
      std::adjacent_find(config.sizes.begin(), config.sizes.end()) != config.sizes.end()) {
    throw InvalidInput("bench: sizes must be strictly ascending");
  }
  if (config.sweeps == 0 || config.trials == 0) {
    throw InvalidInput("bench: sweeps and trials must be positive");
  }
  if (csv) {
    csv->precision(17);
    *csv << kBenchCsvHeader << '\n';
  }

  BenchResult result;
  for (std::size_t n : config.sizes) {
    BenchPoint point;
    point.n = n;
    std::vector<double> sweep_times;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      GenSpec spec;
      spec.n = n;
      spec.r = config.r;
      spec.p = config.p;
      spec.k_true = config.k;
      spec.noise_sigma = config.noise;
      spec.weight_style = config.style;
      spec.seed = random::derive(config.seed, trial, n);
      const StructuredInstance inst = generate_structured(spec).instance;
      point.wa_groups = std::max(inst.wa_rows().num_groups(), inst.wa_cols().num_groups());

      SolveOptions opts;
      opts.k = config.k;
      opts.eps = config.eps;
      opts.max_sweeps = config.sweeps;
      opts.rel_tol = 0.0;  // fixed work per trial
      opts.seed = spec.seed;
      opts.sketchless = config.sketchless;
      opts.ungrouped_baseline = config.dense_baseline;
      opts.threads = config.threads;
      const auto [factors, report] = solve(inst, opts);

      const auto& times = report.sweep_wall_times;
      for (std::size_t h = 0; h < times.size(); ++h) {
        point.max_regressions_per_half =
            std::max(point.max_regressions_per_half, report.regressions_per_half[h]);
        if (csv) {
          *csv << n << ',' << config.r << ',' << config.p << ',' << config.k << ','
               << config.eps << ',' << h << ',' << times[h] << ','
               << report.cost_per_sweep[h] << ',' << report.regressions_per_half[h]
               << ',' << spec.seed << '\n';
        }
      }
      for (std::size_t h = 0; h + 1 < times.size(); h += 2) {
        sweep_times.push_back(times[h] + times[h + 1]);
      }
    }
    point.median_sweep_seconds = median(sweep_times);
    result.points.push_back(point);
  }

  std::vector<double> medians;
  for (const auto& pt : result.points) medians.push_back(pt.median_sweep_seconds);
  result.slope = fit_loglog_slope(config.sizes, medians);
  return result;
}

}  // namespace wlra::tools
