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


#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wlra/generator.hpp"
#include "wlra/opt_bounds.hpp"
#include "wlra/weighted_cost.hpp"

using wlra::BoundParams;
using wlra::DenseMatrix;

namespace {

BoundParams params(std::size_t n, double gamma, std::size_t k, std::size_t r, double eps,
                   double c_exp = 1.0, double c_poly = 1.0) {
  BoundParams p;
  p.n = n;
  p.gamma = gamma;
  p.k = k;
  p.r = r;
  p.eps = eps;
  p.c_exp = c_exp;
  p.c_poly = c_poly;
  return p;
}

}  // namespace

TEST_CASE("lower bound for the unit parameter set is 2^-2") {
  const auto lb = wlra::lower_bound_log2(params(2, 0.0, 1, 1, 1.0));
  CHECK(lb.log2_value == -2.0);
  CHECK(!lb.overflow);
  CHECK(lb.log2_magnitude == doctest::Approx(1.0));
}

TEST_CASE("lower bound scales with n^gamma") {
  const double base = wlra::lower_bound_log2(params(16, 0.0, 2, 2, 0.25)).log2_value;
  const double scaled = wlra::lower_bound_log2(params(16, 0.5, 2, 2, 0.25)).log2_value;
  CHECK(scaled == doctest::Approx(4.0 * base).epsilon(1e-14));
}

TEST_CASE("lower bound is monotone in r, k and 1/eps") {
  const double base = wlra::lower_bound_log2(params(64, 0.5, 1, 1, 0.4)).log2_value;
  CHECK(wlra::lower_bound_log2(params(64, 0.5, 2, 1, 0.4)).log2_value < base);
  CHECK(wlra::lower_bound_log2(params(64, 0.5, 1, 2, 0.4)).log2_value < base);
  CHECK(wlra::lower_bound_log2(params(64, 0.5, 1, 1, 0.2)).log2_value < base);
  CHECK(wlra::lower_bound_log2(params(256, 0.5, 1, 1, 0.4)).log2_value < base);
}

TEST_CASE("property: finite and monotone whenever r k^2 / eps <= 64") {
  for (std::size_t r = 1; r <= 16; ++r) {
    for (std::size_t k = 1; k <= 8; ++k) {
      for (double eps : {0.49, 0.4, 0.25, 0.1, 0.05}) {
        const double x = static_cast<double>(r * k * k) / eps;
        if (x > 64.0) continue;
        for (std::size_t n : {std::size_t{2}, std::size_t{1} << 16, std::size_t{1} << 32}) {
          for (double gamma : {0.0, 0.5, 1.0}) {
            const auto lb = wlra::lower_bound_log2(params(n, gamma, k, r, eps));
            CHECK(std::isfinite(lb.log2_value));
            CHECK(!lb.overflow);
            CHECK(lb.log2_value < 0.0);
            const double x2 = static_cast<double>((r + 1) * k * k) / eps;
            if (x2 <= 64.0) {
              CHECK(wlra::lower_bound_log2(params(n, gamma, k, r + 1, eps)).log2_value <
                    lb.log2_value);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("large parameters overflow to a flagged sentinel") {
  const auto lb = wlra::lower_bound_log2(params(1024, 0.5, 8, 16, 0.1));
  CHECK(lb.overflow);
  CHECK(std::isinf(lb.log2_value));
  CHECK(lb.log2_value < 0.0);
  CHECK(std::isfinite(lb.log2_magnitude));
  const auto budget = wlra::iteration_budget(params(1024, 0.5, 8, 16, 0.1));
  CHECK(budget == static_cast<uint64_t>(std::ceil(lb.log2_magnitude)));
}

TEST_CASE("iteration budget worked examples") {
  // Unit parameters: upper term log2(2) + 1 = 2, lower -2, gap 4.
  CHECK(wlra::iteration_budget(params(2, 0.0, 1, 1, 1.0)) == 2);
  // Same with c_poly = 1021: gap 1021 + 1 + 2 = 1024.
  CHECK(wlra::upper_log2_term(params(2, 0.0, 1, 1, 1.0, 1.0, 1021.0)) -
            wlra::lower_bound_log2(params(2, 0.0, 1, 1, 1.0, 1.0, 1021.0)).log2_value ==
        1024.0);
  CHECK(wlra::iteration_budget(params(2, 0.0, 1, 1, 1.0, 1.0, 1021.0)) == 10);
  CHECK(wlra::budget_from_log2_gap(std::log2(1024.0)) == 10);
  CHECK(wlra::budget_from_log2_gap(0.2) == 1);
}

TEST_CASE("iteration budget is nondecreasing in r, k, gamma") {
  for (std::size_t r = 1; r < 8; ++r)
    CHECK(wlra::iteration_budget(params(4096, 0.5, 2, r + 1, 0.25)) >=
          wlra::iteration_budget(params(4096, 0.5, 2, r, 0.25)));
  for (std::size_t k = 1; k < 8; ++k)
    CHECK(wlra::iteration_budget(params(4096, 0.5, k + 1, 2, 0.25)) >=
          wlra::iteration_budget(params(4096, 0.5, k, 2, 0.25)));
  for (double g = 0.0; g < 1.0; g += 0.1)
    CHECK(wlra::iteration_budget(params(4096, g + 0.1, 2, 2, 0.25)) >=
          wlra::iteration_budget(params(4096, g, 2, 2, 0.25)));
}

TEST_CASE("bound params are validated") {
  CHECK_THROWS_AS(wlra::lower_bound_log2(params(0, 0.0, 1, 1, 0.25)), wlra::InvalidInput);
  CHECK_THROWS_AS(wlra::lower_bound_log2(params(4, -0.1, 1, 1, 0.25)), wlra::InvalidInput);
  CHECK_THROWS_AS(wlra::lower_bound_log2(params(4, 0.0, 1, 1, 0.0)), wlra::InvalidInput);
  CHECK_THROWS_AS(wlra::lower_bound_log2(params(4, 0.0, 0, 1, 0.25)), wlra::InvalidInput);
}

TEST_CASE("upper bound is the weighted norm of A") {
  const auto zero = wlra::build_instance(DenseMatrix::Zero(5, 5), DenseMatrix::Ones(5, 5));
  CHECK(wlra::upper_bound(zero) == 0.0);
  const auto ones = wlra::build_instance(DenseMatrix::Ones(4, 4), DenseMatrix::Ones(4, 4));
  CHECK(wlra::upper_bound(ones) == 16.0);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const DenseMatrix a = oracle::random_matrix(9, 9, seed);
    const DenseMatrix w = oracle::random_matrix(9, 9, seed + 10);
    const auto inst = wlra::build_instance(a, w);
    const DenseMatrix z = DenseMatrix::Zero(9, 1);
    const double dense = wlra::cost_dense(a, w, z, z);
    CHECK(std::abs(wlra::upper_bound(inst) - dense) <= 1e-12 * dense);
  }
}
