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

#ifndef WLRA_INSTANCE_IO_HPP_
#define WLRA_INSTANCE_IO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wlra/pattern_index.hpp"

namespace wlra {

// Instance file layout, all little-endian:
//
//   "WLRA"  u16 version (= 1)  u64 n  u16 flags
//   A       n·n f64, row-major
//   W       n·n f64, row-major            (flags bit 0; absent means all ones)
//   groups  4 x n u32: W rows, W cols,    (flags bit 1)
//           W∘A rows, W∘A cols

inline constexpr uint16_t kInstanceVersion = 1;
inline constexpr uint16_t kFlagDenseWeights = 1u << 0;
inline constexpr uint16_t kFlagSidecar = 1u << 1;
inline constexpr std::size_t kInstanceHeaderBytes = 4 + 2 + 8 + 2;

struct InstanceFile {
  DenseMatrix a;
  std::optional<DenseMatrix> w;
  /// Group ids in the order W rows, W cols, W∘A rows, W∘A cols.
  std::optional<std::array<std::vector<uint32_t>, 4>> sidecar;

  /// W, or an all-ones matrix when the file stores none.
  DenseMatrix weights() const;
};

/// Side-car arrays of a built instance.
std::array<std::vector<uint32_t>, 4> sidecar_of(const StructuredInstance& inst);

std::vector<uint8_t> encode_instance(const InstanceFile& file);
InstanceFile decode_instance(const std::vector<uint8_t>& bytes);

void write_instance(const std::string& path, const InstanceFile& file);
InstanceFile read_instance(const std::string& path);

/// Raw little-endian f64 blocks, row-major, one after another, no header.
void write_factors(const std::string& path, const DenseMatrix& u, const DenseMatrix& v);
std::vector<uint8_t> read_file(const std::string& path);

}  // namespace wlra

#endif  // WLRA_INSTANCE_IO_HPP_
