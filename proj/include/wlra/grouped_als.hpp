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

#ifndef WLRA_GROUPED_ALS_HPP_
#define WLRA_GROUPED_ALS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "wlra/opt_bounds.hpp"
#include "wlra/pattern_index.hpp"
#include "wlra/sketch.hpp"
#include "wlra/weighted_cost.hpp"

namespace wlra {

// Alternating sketched minimization of ‖W ∘ (UVᵀ − A)‖²_F.
//
// With V fixed, the objective splits into one least-squares problem per row
// of U, and rows in the same W∘A group pose the identical problem. A
// half-sweep therefore solves one regression per group (at most rp of them)
// and broadcasts the answer; the k x t sketched design depends only on the W
// pattern, so only r designs are assembled. The column half is the same
// kernel applied to the column patterns.

struct Factorization {
  DenseMatrix u;  // n x k
  DenseMatrix v;  // n x k
  std::optional<GroupedFactor> grouped_u;  // over wa_rows
  std::optional<GroupedFactor> grouped_v;  // over wa_cols
};

/// Passed to SolveOptions::observer after every half-sweep.
struct HalfSweepEvent {
  std::size_t sweep = 0;
  Axis side = Axis::kRows;      // kRows: U was updated, kCols: V was updated
  const GroupedFactor* updated = nullptr;
  const DenseMatrix* fixed = nullptr;  // the factor held fixed
  double cost = 0.0;
};

struct SolveOptions {
  std::size_t k = 1;
  double eps = 0.25;
  std::size_t max_sweeps = 100;
  double rel_tol = 1e-6;  // stop once a full sweep improves the best cost less
  uint64_t seed = 0;
  std::size_t restarts = 1;
  double rank_tolerance = 1e-10;  // relative to the largest singular value
  bool sketchless = false;        // exact per-group regressions
  double sketch_constant = kDefaultSketchConstant;
  bool fixed_sketch = false;      // reuse the sweep-0 sketches every sweep
  bool ungrouped_baseline = false;  // one regression per index; for benchmarks
  int threads = 1;

  // Constants for the reported bracket.
  double gamma = 0.5;
  double c_exp = 1.0;
  double c_poly = 1.0;

  std::function<void(const HalfSweepEvent&)> observer;

  void validate(std::size_t n) const;
};

struct Bracket {
  double lower_log2 = 0.0;  // −infinity on overflow
  bool lower_overflow = false;
  double upper = 0.0;
  uint64_t iteration_budget = 0;
};

struct SolveReport {
  std::vector<double> cost_per_sweep;      // exact cost after each half-sweep
  std::vector<double> sweep_wall_times;    // seconds, per half-sweep
  std::vector<std::size_t> regressions_per_half;
  std::vector<std::size_t> designs_per_half;
  std::vector<uint64_t> sketch_seeds;      // two per sweep; empty when sketchless
  std::vector<double> restart_final_costs;
  double final_cost = 0.0;
  std::size_t sweeps = 0;
  std::size_t regressions_solved = 0;
  std::size_t designs_assembled = 0;
  std::size_t best_restart = 0;
  uint64_t best_seed = 0;
  Bracket bracket;
};

struct UpdateStats {
  std::size_t designs_assembled = 0;
  std::size_t regressions_solved = 0;
};

/// argmin_x ‖Dskᵀ x − target‖₂ of minimum norm, via the SVD of Dsk with
/// singular values at or below rank_tolerance · σ_max treated as zero.
Vector min_norm_solve(const DenseMatrix& dsk, const Eigen::Ref<const Vector>& target,
                      double rank_tolerance = 1e-10);

/// One half-sweep over `side` with `fixed` (n x k) held constant. `sketch`
/// is ignored when opts.sketchless is set and required otherwise.
GroupedFactor update_side(const AxisPatterns& side, const DenseMatrix& fixed,
                          const SketchMatrix* sketch, const SolveOptions& opts,
                          UpdateStats* stats = nullptr);

GroupedFactor update_rows(const StructuredInstance& inst, const DenseMatrix& v,
                          const SketchMatrix* s1, const SolveOptions& opts,
                          UpdateStats* stats = nullptr);

GroupedFactor update_cols(const StructuredInstance& inst, const DenseMatrix& u,
                          const SketchMatrix* s2, const SolveOptions& opts,
                          UpdateStats* stats = nullptr);

/// Random start: i.i.d. N(0, 1) entries, then unit-norm columns.
DenseMatrix initial_factor(std::size_t n, std::size_t k, uint64_t seed);

/// Runs `restarts` independent alternating solves and keeps the factorization
/// with the lowest exact cost. The returned final_cost is the exact objective
/// of the returned factors, hence an upper bound on the optimum.
std::pair<Factorization, SolveReport> solve(const StructuredInstance& inst,
                                            const SolveOptions& opts);

Bracket bracket_for(const StructuredInstance& inst, const SolveOptions& opts);

}  // namespace wlra

#endif  // WLRA_GROUPED_ALS_HPP_
