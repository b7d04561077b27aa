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

#include "wlra/grouped_als.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "wlra/parallel.hpp"
#include "wlra/random.hpp"

namespace wlra {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

DenseMatrix exact_design(const DenseMatrix& fixed, const Eigen::Ref<const Vector>& w) {
  return (w.asDiagonal() * fixed).transpose();
}

DenseMatrix design_for(const DenseMatrix& fixed, const Eigen::Ref<const Vector>& w,
                       const SketchMatrix* sketch, bool sketchless) {
  return sketchless ? exact_design(fixed, w)
                    : sketched_design_from_factor(fixed, w, *sketch);
}

Vector target_for(const Eigen::Ref<const Vector>& wa, const SketchMatrix* sketch,
                  bool sketchless) {
  return sketchless ? Vector(wa) : sketched_target(wa, *sketch);
}

// Every index solves its own regression, ignoring the groups. Used only to
// measure what the grouping saves.
GroupedFactor update_ungrouped(const AxisPatterns& side, const DenseMatrix& fixed,
                               const SketchMatrix* sketch, const SolveOptions& opts,
                               UpdateStats* stats) {
  const std::size_t n = side.product.size();
  DenseMatrix full(static_cast<Eigen::Index>(n), fixed.cols());
  parallel_for(n, opts.threads, [&](std::size_t i) {
    const auto wg = static_cast<Eigen::Index>(side.weight.group_of[i]);
    const auto pg = static_cast<Eigen::Index>(side.product.group_of[i]);
    const DenseMatrix d = design_for(fixed, side.weight_vectors.row(wg).transpose(),
                                     sketch, opts.sketchless);
    const Vector b = target_for(side.product_vectors.row(pg).transpose(), sketch,
                                opts.sketchless);
    full.row(static_cast<Eigen::Index>(i)) =
        min_norm_solve(d, b, opts.rank_tolerance).transpose();
  });
  if (stats) {
    stats->designs_assembled += n;
    stats->regressions_solved += n;
  }
  return GroupedFactor::compress(side.product, full);
}

}  // namespace

void SolveOptions::validate(std::size_t n) const {
  if (k == 0) throw InvalidInput("solve: k must be positive");
  if (k > n) {
    throw InvalidInput("solve: k = " + std::to_string(k) + " exceeds n = " +
                       std::to_string(n));
  }
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidInput("solve: eps must lie in (0, 0.5)");
  if (max_sweeps == 0) throw InvalidInput("solve: max_sweeps must be positive");
  if (restarts == 0) throw InvalidInput("solve: restarts must be positive");
  if (!(rel_tol >= 0.0)) throw InvalidInput("solve: rel_tol must be nonnegative");
  if (!(rank_tolerance >= 0.0)) {
    throw InvalidInput("solve: rank_tolerance must be nonnegative");
  }
  if (!(sketch_constant > 0.0)) throw InvalidInput("solve: c_s must be positive");
}

Vector min_norm_solve(const DenseMatrix& dsk, const Eigen::Ref<const Vector>& target,
                      double rank_tolerance) {
  if (dsk.rows() == 0 || dsk.cols() == 0) {
    throw InvalidInput("min_norm_solve: empty design");
  }
  if (target.size() != dsk.cols()) {
    throw InvalidInput("min_norm_solve: design is " + std::to_string(dsk.rows()) +
                       "x" + std::to_string(dsk.cols()) + ", target has " +
                       std::to_string(target.size()) + " entries");
  }
  if (!dsk.allFinite() || !target.allFinite()) {
    throw InvalidInput("min_norm_solve: non-finite input");
  }
  if (!(rank_tolerance >= 0.0)) {
    throw InvalidInput("min_norm_solve: rank_tolerance must be nonnegative");
  }
  const Eigen::MatrixXd m = dsk.transpose();  // t x k
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  Vector x = Vector::Zero(dsk.rows());
  if (sigma.size() == 0 || sigma(0) == 0.0) return x;
  const double cutoff = rank_tolerance * sigma(0);
  const Vector projected = svd.matrixU().transpose() * target;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= cutoff) break;  // sorted descending
    x += svd.matrixV().col(i) * (projected(i) / sigma(i));
  }
  return x;
}

GroupedFactor update_side(const AxisPatterns& side, const DenseMatrix& fixed,
                          const SketchMatrix* sketch, const SolveOptions& opts,
                          UpdateStats* stats) {
  const std::size_t n = side.product.size();
  if (static_cast<std::size_t>(fixed.rows()) != n || fixed.cols() == 0) {
    throw InvalidInput("update: fixed factor must be n x k");
  }
  if (!fixed.allFinite()) throw InvalidInput("update: fixed factor is not finite");
  if (!opts.sketchless) {
    if (sketch == nullptr) throw InvalidInput("update: sketch required");
    if (sketch->n != n) throw InvalidInput("update: sketch width differs from n");
  }
  if (opts.ungrouped_baseline) {
    return update_ungrouped(side, fixed, sketch, opts, stats);
  }

  const std::size_t weight_groups = side.weight.num_groups();
  std::vector<DenseMatrix> designs(weight_groups);
  parallel_for(weight_groups, opts.threads, [&](std::size_t a) {
    designs[a] = design_for(
        fixed, side.weight_vectors.row(static_cast<Eigen::Index>(a)).transpose(),
        sketch, opts.sketchless);
  });

  const std::size_t groups = side.product.num_groups();
  GroupedFactor out;
  out.index = side.product;
  out.rows.resize(static_cast<Eigen::Index>(groups), fixed.cols());
  parallel_for(groups, opts.threads, [&](std::size_t g) {
    const auto gi = static_cast<Eigen::Index>(g);
    const Vector b =
        target_for(side.product_vectors.row(gi).transpose(), sketch, opts.sketchless);
    out.rows.row(gi) =
        min_norm_solve(designs[side.weight_group_of_product[g]], b, opts.rank_tolerance)
            .transpose();
  });
  if (stats) {
    stats->designs_assembled += weight_groups;
    stats->regressions_solved += groups;
  }
  return out;
}

GroupedFactor update_rows(const StructuredInstance& inst, const DenseMatrix& v,
                          const SketchMatrix* s1, const SolveOptions& opts,
                          UpdateStats* stats) {
  return update_side(inst.rows, v, s1, opts, stats);
}

GroupedFactor update_cols(const StructuredInstance& inst, const DenseMatrix& u,
                          const SketchMatrix* s2, const SolveOptions& opts,
                          UpdateStats* stats) {
  return update_side(inst.cols, u, s2, opts, stats);
}

DenseMatrix initial_factor(std::size_t n, std::size_t k, uint64_t seed) {
  DenseMatrix v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  const uint64_t key = random::derive(seed, 0x1417);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          random::normal(key, i * k + c);
    }
  }
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    const double norm = v.col(c).norm();
    if (norm > 0.0) v.col(c) /= norm;
  }
  return v;
}

Bracket bracket_for(const StructuredInstance& inst, const SolveOptions& opts) {
  BoundParams params;
  params.n = inst.n;
  params.gamma = opts.gamma;
  params.k = opts.k;
  params.r = std::max<std::size_t>(inst.r, 1);
  params.eps = opts.eps;
  params.c_exp = opts.c_exp;
  params.c_poly = opts.c_poly;
  const LowerBound lower = lower_bound_log2(params);
  Bracket b;
  b.lower_log2 = lower.log2_value;
  b.lower_overflow = lower.overflow;
  b.upper = upper_bound(inst);
  b.iteration_budget = iteration_budget(params);
  return b;
}

namespace {

struct RunResult {
  GroupedFactor u;
  GroupedFactor v;
  double cost = std::numeric_limits<double>::infinity();
  SolveReport report;
};

RunResult run_once(const StructuredInstance& inst, const SolveOptions& opts,
                   uint64_t run_seed) {
  const std::size_t n = inst.n;
  const std::size_t t = opts.sketchless ? n : sketch_dim(opts.k, opts.eps, opts.sketch_constant);
  RunResult best;
  SolveReport& rep = best.report;
  DenseMatrix v = initial_factor(n, opts.k, run_seed);

  auto half = [&](std::size_t sweep, Axis side_axis, const DenseMatrix& fixed,
                  const AxisPatterns& side, uint64_t stream) {
    const auto start = Clock::now();
    std::optional<SketchMatrix> sketch;
    if (!opts.sketchless) {
      const uint64_t sweep_key = opts.fixed_sketch ? 0 : sweep;
      const uint64_t seed = random::derive(run_seed ^ sweep_key, stream);
      sketch = gaussian_sketch(seed, t, n);
      rep.sketch_seeds.push_back(seed);
    }
    UpdateStats stats;
    GroupedFactor updated =
        update_side(side, fixed, sketch ? &*sketch : nullptr, opts, &stats);
    const double cost = cost_side(side, updated, fixed, nullptr, opts.threads);
    rep.sweep_wall_times.push_back(seconds_since(start));
    rep.cost_per_sweep.push_back(cost);
    rep.regressions_per_half.push_back(stats.regressions_solved);
    rep.designs_per_half.push_back(stats.designs_assembled);
    rep.regressions_solved += stats.regressions_solved;
    rep.designs_assembled += stats.designs_assembled;
    if (opts.observer) {
      HalfSweepEvent ev;
      ev.sweep = sweep;
      ev.side = side_axis;
      ev.updated = &updated;
      ev.fixed = &fixed;
      ev.cost = cost;
      opts.observer(ev);
    }
    return std::make_pair(std::move(updated), cost);
  };

  for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    auto [gu, cost_u] = half(sweep, Axis::kRows, v, inst.rows, 1);
    const DenseMatrix u = gu.expand();
    auto [gv, cost_v] = half(sweep, Axis::kCols, u, inst.cols, 2);
    v = gv.expand();
    rep.sweeps = sweep + 1;

    const double previous = best.cost;
    if (cost_v < best.cost) {
      best.cost = cost_v;
      best.u = std::move(gu);
      best.v = std::move(gv);
    }
    if (best.cost == 0.0) break;
    if (std::isfinite(previous) && previous - best.cost < opts.rel_tol * previous) break;
  }
  rep.final_cost = best.cost;
  return best;
}

}  // namespace

std::pair<Factorization, SolveReport> solve(const StructuredInstance& inst,
                                            const SolveOptions& opts) {
  opts.validate(inst.n);
  inst.validate();

  std::optional<RunResult> winner;
  std::vector<double> finals;
  for (std::size_t restart = 0; restart < opts.restarts; ++restart) {
    const uint64_t run_seed = random::derive(opts.seed, restart, 0x5eed);
    RunResult run = run_once(inst, opts, run_seed);
    run.report.best_restart = restart;
    run.report.best_seed = run_seed;
    finals.push_back(run.cost);
    if (!winner || run.cost < winner->cost) winner = std::move(run);
  }

  Factorization f;
  f.u = winner->u.expand();
  f.v = winner->v.expand();
  f.grouped_u = std::move(winner->u);
  f.grouped_v = std::move(winner->v);
  SolveReport report = std::move(winner->report);
  report.restart_final_costs = std::move(finals);
  report.bracket = bracket_for(inst, opts);
  return {std::move(f), std::move(report)};
}

}  // namespace wlra
