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

#include "wlra/opt_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wlra/weighted_cost.hpp"

namespace wlra {
namespace {

// Largest log2 magnitude whose power of two is still a finite double.
constexpr double kMaxLog2 = 1023.0;

}  // namespace

void BoundParams::validate() const {
  if (n == 0 || k == 0 || r == 0) {
    throw InvalidInput("bound params: n, k, r must be positive");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidInput("bound params: gamma must be a finite nonnegative value");
  }
  if (!(eps > 0.0) || !(c_exp > 0.0) || !(c_poly > 0.0)) {
    throw InvalidInput("bound params: eps, c_exp, c_poly must be positive");
  }
}

double upper_bound(const StructuredInstance& inst) {
  GroupedFactor zero;
  zero.index = inst.wa_rows();
  zero.rows = DenseMatrix::Zero(static_cast<Eigen::Index>(zero.index.num_groups()), 1);
  const DenseMatrix v = DenseMatrix::Zero(static_cast<Eigen::Index>(inst.n), 1);
  return cost_grouped(inst, zero, v);
}

LowerBound lower_bound_log2(const BoundParams& params) {
  params.validate();
  const double x = static_cast<double>(params.r) *
                   static_cast<double>(params.k) *
                   static_cast<double>(params.k) / params.eps;
  const double exponent = params.c_exp * x * std::log2(std::max(2.0, x));
  const double log2_n = std::log2(static_cast<double>(params.n));

  LowerBound out;
  out.log2_magnitude = params.gamma * log2_n + exponent;
  if (!std::isfinite(out.log2_magnitude)) {
    throw InvalidInput("lower bound: exponent is not representable even in log space");
  }
  if (out.log2_magnitude > kMaxLog2) {
    out.overflow = true;
    out.log2_value = -std::numeric_limits<double>::infinity();
  } else {
    out.log2_value = -(std::pow(static_cast<double>(params.n), params.gamma) *
                       std::exp2(exponent));
  }
  return out;
}

double upper_log2_term(const BoundParams& params) {
  params.validate();
  return params.c_poly * std::log2(static_cast<double>(params.n)) +
         std::pow(static_cast<double>(params.n), params.gamma);
}

uint64_t budget_from_log2_gap(double log2_gap) {
  if (!std::isfinite(log2_gap)) throw InvalidInput("budget: gap is not finite");
  return static_cast<uint64_t>(std::max(1.0, std::ceil(log2_gap)));
}

uint64_t iteration_budget(const BoundParams& params) {
  const LowerBound lower = lower_bound_log2(params);
  const double upper = upper_log2_term(params);
  double log2_gap = 0.0;
  if (!lower.overflow) {
    log2_gap = std::log2(upper - lower.log2_value);
  } else {
    // log2(2^m + upper) = m + log2(1 + upper·2^-m), with m = log2 |lower|.
    log2_gap = lower.log2_magnitude +
               std::log1p(upper * std::exp2(-lower.log2_magnitude)) / std::log(2.0);
  }
  return budget_from_log2_gap(log2_gap);
}

}  // namespace wlra
