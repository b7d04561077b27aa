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

#ifndef WLRA_OPT_BOUNDS_HPP_
#define WLRA_OPT_BOUNDS_HPP_

#include <cstddef>
#include <cstdint>

#include "wlra/pattern_index.hpp"

namespace wlra {

// Arithmetic for the interval a certifying binary search over the optimum
// would have to cover: zero factorization above, bit-complexity bound below.
// Everything stays in log2 space; nothing of size 2^(n^γ) is materialized.

struct BoundParams {
  std::size_t n = 1;
  double gamma = 0.0;  // entries need n^gamma bits
  std::size_t k = 1;
  std::size_t r = 1;
  double eps = 0.25;
  double c_exp = 1.0;   // constant hidden in the exponent
  double c_poly = 1.0;  // degree of the poly(n) factor in the upper bound

  void validate() const;
};

struct LowerBound {
  /// log2 of the lower bound on a nonzero optimum:
  /// −n^γ · 2^(c_exp · x · log2(max(2, x))) with x = r·k²/eps.
  /// −infinity when the value is not representable (see `overflow`).
  double log2_value = 0.0;
  /// log2(−log2_value), always finite; lets callers keep working past overflow.
  double log2_magnitude = 0.0;
  bool overflow = false;
};

/// ‖W∘A‖²_F, the cost of U = V = 0, from representatives only.
double upper_bound(const StructuredInstance& inst);

LowerBound lower_bound_log2(const BoundParams& params);

/// log2 of the poly(n) · 2^(n^γ) ceiling on the optimum for n^γ-bit entries:
/// c_poly · log2(n) + n^γ.
double upper_log2_term(const BoundParams& params);

/// Number of halvings needed to shrink [lower, upper] to a factor-2 bracket:
/// ceil(log2(upper_log2_term − lower_bound_log2)).
uint64_t iteration_budget(const BoundParams& params);

/// ceil(log2(gap)) for a positive gap given as log2(gap).
uint64_t budget_from_log2_gap(double log2_gap);

}  // namespace wlra

#endif  // WLRA_OPT_BOUNDS_HPP_
