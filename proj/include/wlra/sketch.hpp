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

#ifndef WLRA_SKETCH_HPP_
#define WLRA_SKETCH_HPP_

#include <cstddef>
#include <cstdint>

#include "wlra/types.hpp"

namespace wlra {

/// A t x n Gaussian sketch with entries N(0, 1/t), reproducible from its seed.
struct SketchMatrix {
  std::size_t t = 0;
  std::size_t n = 0;
  uint64_t seed = 0;
  DenseMatrix values;  // t x n

  /// t = n identity embedding (no compression). Test use only: it stores n².
  static SketchMatrix identity_embedding(std::size_t n);
};

inline constexpr double kDefaultSketchConstant = 4.0;

/// t = max(k + 1, ceil(c_s · k / eps)) for eps in (0, 1/2).
std::size_t sketch_dim(std::size_t k, double eps,
                       double c_s = kDefaultSketchConstant);

SketchMatrix gaussian_sketch(uint64_t seed, std::size_t t, std::size_t n);

/// Z · diag(w) · Sᵀ, the k x t design shared by every row whose weight
/// vector is `w`. O(n·k·t).
DenseMatrix sketched_design(const DenseMatrix& z,
                            const Eigen::Ref<const Vector>& w,
                            const SketchMatrix& s);

/// The same design with Z given transposed, as the n x k factor held fixed
/// during a half-sweep: factorᵀ · diag(w) · Sᵀ.
DenseMatrix sketched_design_from_factor(const DenseMatrix& factor,
                                        const Eigen::Ref<const Vector>& w,
                                        const SketchMatrix& s);

/// S · x, a sketched regression target.
Vector sketched_target(const Eigen::Ref<const Vector>& x, const SketchMatrix& s);

}  // namespace wlra

#endif  // WLRA_SKETCH_HPP_
