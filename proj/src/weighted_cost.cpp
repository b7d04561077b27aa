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

#include "wlra/weighted_cost.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "wlra/parallel.hpp"

namespace wlra {
namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// ‖w ∘ (u Vᵀ) − target‖² for one row. Both evaluators go through here so the
// all-singletons grouping reproduces the dense value bit for bit.
template <class Target>
double row_cost(const double* u, const DenseMatrix& v, const double* w,
                Target target) {
  const Eigen::Index n = v.rows();
  const Eigen::Index k = v.cols();
  CompensatedSum acc;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double* vj = v.row(j).data();
    double dot = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) dot += u[c] * vj[c];
    const double diff = w[j] * dot - target(j);
    acc.add(diff * diff);
  }
  return acc.value();
}

}  // namespace

DenseMatrix GroupedFactor::expand() const {
  const std::size_t n = index.size();
  if (static_cast<std::size_t>(rows.rows()) != index.num_groups()) {
    throw InvalidInput("grouped factor: row count differs from group count");
  }
  DenseMatrix out(static_cast<Eigen::Index>(n), rows.cols());
  for (std::size_t i = 0; i < n; ++i) {
    out.row(static_cast<Eigen::Index>(i)) = rows.row(index.group_of[i]);
  }
  return out;
}

GroupedFactor GroupedFactor::compress(const PatternIndex& index,
                                      const DenseMatrix& full) {
  if (static_cast<std::size_t>(full.rows()) != index.size()) {
    throw InvalidInput("compress: factor has " + std::to_string(full.rows()) +
                       " rows, index covers " + std::to_string(index.size()));
  }
  GroupedFactor g;
  g.index = index;
  g.rows.resize(static_cast<Eigen::Index>(index.num_groups()), full.cols());
  for (std::size_t gi = 0; gi < index.num_groups(); ++gi) {
    g.rows.row(static_cast<Eigen::Index>(gi)) =
        full.row(static_cast<Eigen::Index>(index.representatives[gi]));
  }
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (full.row(static_cast<Eigen::Index>(i)) != g.rows.row(index.group_of[i])) {
      throw InvalidInput("compress: factor is not constant on groups");
    }
  }
  return g;
}

double cost_dense(const DenseMatrix& a, const DenseMatrix& w,
                  const DenseMatrix& u, const DenseMatrix& v) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || w.rows() != n || w.cols() != n || u.rows() != n ||
      v.rows() != n || u.cols() != v.cols()) {
    throw InvalidInput("cost_dense: shape mismatch");
  }
  CompensatedSum total;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* wi = w.row(i).data();
    const double* ai = a.row(i).data();
    total.add(row_cost(u.row(i).data(), v, wi,
                       [&](Eigen::Index j) { return wi[j] * ai[j]; }));
  }
  return total.value();
}

double cost_side(const AxisPatterns& side, const GroupedFactor& grouped,
                 const DenseMatrix& other, CostStats* stats, int threads) {
  const std::size_t groups = side.product.num_groups();
  if (grouped.index.group_of != side.product.group_of) {
    throw InvalidInput("cost: factor is not grouped over the W∘A patterns");
  }
  if (static_cast<std::size_t>(grouped.rows.rows()) != groups ||
      grouped.rows.cols() != other.cols() ||
      other.rows() != side.product_vectors.cols()) {
    throw InvalidInput("cost: shape mismatch");
  }
  std::vector<double> terms(groups);
  parallel_for(groups, threads, [&](std::size_t g) {
    const auto gi = static_cast<Eigen::Index>(g);
    const double* w =
        side.weight_vectors.row(side.weight_group_of_product[g]).data();
    const double* wa = side.product_vectors.row(gi).data();
    terms[g] = static_cast<double>(side.product.sizes[g]) *
               row_cost(grouped.rows.row(gi).data(), other, w,
                        [&](Eigen::Index j) { return wa[j]; });
  });
  CompensatedSum total;
  for (double t : terms) total.add(t);
  if (stats) stats->representative_evaluations += groups;
  return total.value();
}

double cost_grouped(const StructuredInstance& inst, const GroupedFactor& u,
                    const DenseMatrix& v, CostStats* stats, int threads) {
  return cost_side(inst.rows, u, v, stats, threads);
}

}  // namespace wlra
