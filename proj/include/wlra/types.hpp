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

#ifndef WLRA_TYPES_HPP_
#define WLRA_TYPES_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wlra {

// Row-major so that a matrix row is a contiguous vector; every kernel in the
// library walks rows.
using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class Axis { kRows, kCols };

inline const char* axis_name(Axis axis) {
  return axis == Axis::kRows ? "rows" : "cols";
}

// Bad shapes, non-finite data, violated preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// The generator could not place an instance in generic position.
class GenerationFailure : public std::runtime_error {
 public:
  explicit GenerationFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// Unreadable, unwritable, or corrupt instance files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wlra

#endif  // WLRA_TYPES_HPP_
