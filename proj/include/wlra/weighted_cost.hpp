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

#ifndef WLRA_WEIGHTED_COST_HPP_
#define WLRA_WEIGHTED_COST_HPP_

#include <cstddef>

#include "wlra/pattern_index.hpp"
#include "wlra/types.hpp"

namespace wlra {

/// A factor that is constant on the groups of `index`: one k-vector per group.
struct GroupedFactor {
  PatternIndex index;
  DenseMatrix rows;  // num_groups x k

  std::size_t rank() const { return static_cast<std::size_t>(rows.cols()); }

  /// Broadcasts rows[g] to every member of group g (n x k).
  DenseMatrix expand() const;

  /// Takes the representative rows of `full`. Throws InvalidInput if `full`
  /// is not constant on the groups of `index`.
  static GroupedFactor compress(const PatternIndex& index, const DenseMatrix& full);
};

struct CostStats {
  std::size_t representative_evaluations = 0;
};

/// Σ_ij W_ij² ((UVᵀ)_ij − A_ij)² with compensated summation. Touches all n²
/// entries; this is the oracle the grouped evaluator is checked against.
double cost_dense(const DenseMatrix& a, const DenseMatrix& w,
                  const DenseMatrix& u, const DenseMatrix& v);

/// The same objective evaluated from representatives only:
/// Σ_g |g| · ‖W_{S(g),*} ∘ (u_g Vᵀ) − (W∘A)_{S(g),*}‖², with g over the
/// W∘A groups of `side`. Column-side costs pass `inst.cols` and swap roles.
double cost_side(const AxisPatterns& side, const GroupedFactor& grouped,
                 const DenseMatrix& other, CostStats* stats = nullptr,
                 int threads = 1);

/// Row-side grouped cost; `u` must be grouped over inst.wa_rows().
double cost_grouped(const StructuredInstance& inst, const GroupedFactor& u,
                    const DenseMatrix& v, CostStats* stats = nullptr,
                    int threads = 1);

}  // namespace wlra

#endif  // WLRA_WEIGHTED_COST_HPP_
