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

#ifndef WLRA_RANDOM_HPP_
#define WLRA_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wlra::random {

// Counter-based generation: the value at position `counter` of stream `key`
// depends on nothing else, so results are independent of evaluation order
// and thread count.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Mixes a seed with two stream coordinates into a new key.
inline uint64_t derive(uint64_t seed, uint64_t a, uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

inline uint64_t bits(uint64_t key, uint64_t counter) {
  return splitmix64(key ^ splitmix64(counter));
}

/// Uniform on the open interval (0, 1).
inline double uniform(uint64_t key, uint64_t counter) {
  return (static_cast<double>(bits(key, counter) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box–Muller on two uniforms of the stream.
inline double normal(uint64_t key, uint64_t counter) {
  const double u1 = uniform(key, 2 * counter);
  const double u2 = uniform(key, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace wlra::random

#endif  // WLRA_RANDOM_HPP_
