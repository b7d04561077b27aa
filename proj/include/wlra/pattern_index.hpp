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

#ifndef WLRA_PATTERN_INDEX_HPP_
#define WLRA_PATTERN_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "wlra/types.hpp"

namespace wlra {

/// Partition of the row (or column) indices of a matrix into groups of
/// entry-wise identical vectors.
///
/// Group ids are assigned in order of first appearance, so group 0 always
/// contains index 0 and `representatives` is strictly increasing.
struct PatternIndex {
  Axis axis = Axis::kRows;
  std::vector<uint32_t> group_of;        // index -> group id
  std::vector<std::size_t> representatives;  // smallest member of each group
  std::vector<std::size_t> sizes;        // group cardinalities

  std::size_t size() const { return group_of.size(); }
  std::size_t num_groups() const { return sizes.size(); }

  /// Builds an index from a group assignment. Ids must already be in order of
  /// first appearance.
  static PatternIndex from_assignment(Axis axis, std::vector<uint32_t> group_of);

  /// All-singletons partition of [n].
  static PatternIndex singletons(Axis axis, std::size_t n);

  /// Throws InvalidInput if the partition invariants do not hold.
  void validate() const;

  /// True if every group of `this` lies inside one group of `coarser`.
  bool refines(const PatternIndex& coarser) const;

  friend bool operator==(const PatternIndex&, const PatternIndex&) = default;
};

/// Groups the rows (or columns) of `m` by entry-wise equality within
/// `tolerance`. Each vector joins the first existing group whose
/// representative matches it, so grouping under a positive tolerance is not
/// transitive closure. A tolerance of 0 compares values exactly (+0 == -0).
PatternIndex detect_groups(const DenseMatrix& m, Axis axis,
                           double tolerance = 0.0);

/// Splits every group of `outer` by the equality classes of the vectors of
/// `inner_key` along `outer.axis`.
PatternIndex refine(const PatternIndex& outer, const DenseMatrix& inner_key,
                    double tolerance = 0.0);

/// Pattern data for one axis of an instance.
///
/// For the row axis, the "vector" of index i is row i of W (or of W∘A); for
/// the column axis it is column i. Only one vector per group is stored, which
/// is all the grouped kernels ever touch.
struct AxisPatterns {
  PatternIndex weight;   // groups of identical W vectors
  PatternIndex product;  // groups of identical W∘A vectors, refines `weight`
  std::vector<uint32_t> weight_group_of_product;  // product group -> weight group
  DenseMatrix weight_vectors;   // weight.num_groups() x n
  DenseMatrix product_vectors;  // product.num_groups() x n

  void validate(std::size_t n) const;
};

/// (A, W) with the four pattern indices.
///
/// The dense matrices are optional: large generated instances exist only in
/// grouped form, since n x n storage is what the grouped solver avoids.
struct StructuredInstance {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t p = 0;
  AxisPatterns rows;
  AxisPatterns cols;
  std::shared_ptr<const DenseMatrix> a;  // may be null
  std::shared_ptr<const DenseMatrix> w;  // may be null

  const PatternIndex& w_rows() const { return rows.weight; }
  const PatternIndex& w_cols() const { return cols.weight; }
  const PatternIndex& wa_rows() const { return rows.product; }
  const PatternIndex& wa_cols() const { return cols.product; }

  bool has_dense() const { return a != nullptr && w != nullptr; }

  /// The instance of (Aᵀ, Wᵀ): row and column patterns swap.
  StructuredInstance transposed() const;

  /// Checks every structural invariant, including r and p bookkeeping.
  void validate() const;
};

/// Computes r = max(#W row groups, #W column groups) and
/// p = ceil(max(#W∘A row groups, #W∘A column groups) / r).
void assign_rp(StructuredInstance& inst);

/// Detects the W and W∘A patterns of a dense instance.
StructuredInstance build_instance(const DenseMatrix& a, const DenseMatrix& w,
                                  double tolerance = 0.0);

/// Throws InvalidInput unless the instance has exactly the given (r, p).
void assume_rp(const StructuredInstance& inst, std::size_t r, std::size_t p);

}  // namespace wlra

#endif  // WLRA_PATTERN_INDEX_HPP_
