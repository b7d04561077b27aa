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

#include "wlra/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wlra/random.hpp"

namespace wlra {

SketchMatrix SketchMatrix::identity_embedding(std::size_t n) {
  SketchMatrix s;
  s.t = n;
  s.n = n;
  s.values = DenseMatrix::Identity(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n));
  return s;
}

std::size_t sketch_dim(std::size_t k, double eps, double c_s) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw InvalidInput("sketch_dim: eps must lie in (0, 0.5), got " +
                       std::to_string(eps));
  }
  if (k == 0) throw InvalidInput("sketch_dim: k must be positive");
  if (!(c_s > 0.0)) throw InvalidInput("sketch_dim: c_s must be positive");
  const double raw = std::ceil(c_s * static_cast<double>(k) / eps);
  return std::max(k + 1, static_cast<std::size_t>(raw));
}

SketchMatrix gaussian_sketch(uint64_t seed, std::size_t t, std::size_t n) {
  if (t == 0 || n == 0) throw InvalidInput("gaussian_sketch: t and n must be >= 1");
  SketchMatrix s;
  s.t = t;
  s.n = n;
  s.seed = seed;
  s.values.resize(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(n));
  const uint64_t key = random::derive(seed, 0x5ce7c4);
  const double scale = 1.0 / std::sqrt(static_cast<double>(t));
  double* data = s.values.data();
  const std::size_t total = t * n;
  for (std::size_t c = 0; c < total; ++c) {
    data[c] = scale * random::normal(key, c);
  }
  return s;
}

DenseMatrix sketched_design_from_factor(const DenseMatrix& factor,
                                        const Eigen::Ref<const Vector>& w,
                                        const SketchMatrix& s) {
  if (static_cast<std::size_t>(factor.rows()) != s.n || w.size() != factor.rows() ||
      static_cast<std::size_t>(s.values.cols()) != s.n) {
    throw InvalidInput("sketched_design: shape mismatch");
  }
  // (S · diag(w) · factor)ᵀ, one GEMM over the n x k scaled factor.
  const DenseMatrix scaled = w.asDiagonal() * factor;
  DenseMatrix out = (s.values * scaled).transpose();
  return out;
}

DenseMatrix sketched_design(const DenseMatrix& z,
                            const Eigen::Ref<const Vector>& w,
                            const SketchMatrix& s) {
  if (z.cols() != w.size()) throw InvalidInput("sketched_design: shape mismatch");
  return sketched_design_from_factor(z.transpose(), w, s);
}

Vector sketched_target(const Eigen::Ref<const Vector>& x, const SketchMatrix& s) {
  if (static_cast<std::size_t>(x.size()) != s.n) {
    throw InvalidInput("sketched_target: shape mismatch");
  }
  return s.values * x;
}

}  // namespace wlra
