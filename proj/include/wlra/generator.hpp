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

#ifndef WLRA_GENERATOR_HPP_
#define WLRA_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "wlra/pattern_index.hpp"

namespace wlra {

enum class WeightStyle { kBlockRandom, kBlockMask01, kAttentionBlock };

std::string to_string(WeightStyle style);
std::optional<WeightStyle> parse_weight_style(const std::string& name);

/// Synthetic instance with planted structure.
///
/// Indices are split into r·p contiguous cells (sizes differ by at most one);
/// cell c belongs to band c / p. W is constant on band x band blocks and A is
/// constant on cell x cell blocks, so W has r distinct rows and columns and
/// W∘A has r·p.
struct GenSpec {
  std::size_t n = 64;
  std::size_t r = 2;
  std::size_t p = 2;
  std::size_t k_true = 2;
  double noise_sigma = 0.0;
  WeightStyle weight_style = WeightStyle::kBlockRandom;
  uint64_t seed = 0;

  void validate() const;
};

struct GeneratedInstance {
  StructuredInstance instance;
  /// Planted factors (n x k_true), tiled from the cell-level factors; with
  /// zero noise, U Vᵀ = A exactly up to rounding.
  DenseMatrix planted_u;
  DenseMatrix planted_v;
  /// The seed that produced a generic instance (differs from spec.seed after
  /// a collision retry).
  uint64_t effective_seed = 0;
};

/// Builds the instance in grouped form only (O(r·p·n) memory). Suitable for
/// any n.
GeneratedInstance generate_structured(const GenSpec& spec);

/// Builds dense A and W, detects their patterns, and checks that the detected
/// counts equal the planted ones.
GeneratedInstance generate_planted(const GenSpec& spec);

/// Dense, validated instance.
StructuredInstance generate(const GenSpec& spec);

/// Block lower-triangular 0/1 mask: block (I, J) is all ones iff I >= J.
DenseMatrix generate_attention_mask(std::size_t n, std::size_t block);

}  // namespace wlra

#endif  // WLRA_GENERATOR_HPP_
