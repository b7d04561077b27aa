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

#include "wlra/pattern_index.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>

namespace wlra {
namespace {

uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

uint64_t hash_row(const double* v, std::size_t len, uint64_t seed) {
  uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  for (std::size_t j = 0; j < len; ++j) {
    // +0 and -0 compare equal, so they must hash equal.
    const double x = v[j] == 0.0 ? 0.0 : v[j];
    h = mix64(h ^ std::bit_cast<uint64_t>(x)) + j;
  }
  return h;
}

bool rows_match(const double* a, const double* b, std::size_t len,
                double tolerance) {
  if (tolerance == 0.0) {
    for (std::size_t j = 0; j < len; ++j) {
      if (a[j] != b[j]) return false;
    }
    return true;
  }
  for (std::size_t j = 0; j < len; ++j) {
    if (std::abs(a[j] - b[j]) > tolerance) return false;
  }
  return true;
}

void require_finite(const DenseMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + " has a non-finite entry");
  }
}

// Vectors along `axis`, laid out as contiguous rows.
DenseMatrix vectors_along(const DenseMatrix& m, Axis axis) {
  if (axis == Axis::kRows) return m;
  return m.transpose();
}

// Groups the rows of `vecs`. When `outer` is given, rows may only share a
// group if they share an outer group. Ids follow first appearance.
std::vector<uint32_t> group_rows(const DenseMatrix& vecs,
                                 const std::vector<uint32_t>* outer,
                                 double tolerance) {
  const std::size_t n = static_cast<std::size_t>(vecs.rows());
  const std::size_t len = static_cast<std::size_t>(vecs.cols());
  std::vector<uint32_t> group_of(n);
  std::vector<std::size_t> reps;
  std::vector<uint32_t> rep_outer;

  if (tolerance == 0.0) {
    std::unordered_map<uint64_t, std::vector<uint32_t>> buckets;
    for (std::size_t i = 0; i < n; ++i) {
      const uint32_t o = outer ? (*outer)[i] : 0;
      const uint64_t h = hash_row(vecs.row(i).data(), len, o);
      auto& bucket = buckets[h];
      bool found = false;
      for (uint32_t g : bucket) {
        if (rep_outer[g] == o &&
            rows_match(vecs.row(reps[g]).data(), vecs.row(i).data(), len, 0.0)) {
          group_of[i] = g;
          found = true;
          break;
        }
      }
      if (!found) {
        const auto g = static_cast<uint32_t>(reps.size());
        reps.push_back(i);
        rep_outer.push_back(o);
        bucket.push_back(g);
        group_of[i] = g;
      }
    }
    return group_of;
  }

  // First match against representatives, in group creation order.
  for (std::size_t i = 0; i < n; ++i) {
    const uint32_t o = outer ? (*outer)[i] : 0;
    bool found = false;
    for (std::size_t g = 0; g < reps.size(); ++g) {
      if (rep_outer[g] == o &&
          rows_match(vecs.row(reps[g]).data(), vecs.row(i).data(), len,
                     tolerance)) {
        group_of[i] = static_cast<uint32_t>(g);
        found = true;
        break;
      }
    }
    if (!found) {
      group_of[i] = static_cast<uint32_t>(reps.size());
      reps.push_back(i);
      rep_outer.push_back(o);
    }
  }
  return group_of;
}

void fill_axis(AxisPatterns& side, const DenseMatrix& w_vecs,
               const DenseMatrix& wa_vecs, Axis axis, double tolerance) {
  side.weight =
      PatternIndex::from_assignment(axis, group_rows(w_vecs, nullptr, tolerance));
  side.product = PatternIndex::from_assignment(
      axis, group_rows(wa_vecs, &side.weight.group_of, tolerance));

  const std::size_t n = static_cast<std::size_t>(w_vecs.cols());
  side.weight_vectors.resize(static_cast<Eigen::Index>(side.weight.num_groups()),
                             static_cast<Eigen::Index>(n));
  for (std::size_t g = 0; g < side.weight.num_groups(); ++g) {
    side.weight_vectors.row(static_cast<Eigen::Index>(g)) =
        w_vecs.row(static_cast<Eigen::Index>(side.weight.representatives[g]));
  }
  const std::size_t gp = side.product.num_groups();
  side.product_vectors.resize(static_cast<Eigen::Index>(gp),
                              static_cast<Eigen::Index>(n));
  side.weight_group_of_product.resize(gp);
  for (std::size_t g = 0; g < gp; ++g) {
    const std::size_t rep = side.product.representatives[g];
    side.product_vectors.row(static_cast<Eigen::Index>(g)) =
        wa_vecs.row(static_cast<Eigen::Index>(rep));
    side.weight_group_of_product[g] = side.weight.group_of[rep];
  }
}

}  // namespace

PatternIndex PatternIndex::from_assignment(Axis axis,
                                           std::vector<uint32_t> group_of) {
  PatternIndex idx;
  idx.axis = axis;
  idx.group_of = std::move(group_of);
  for (std::size_t i = 0; i < idx.group_of.size(); ++i) {
    const uint32_t g = idx.group_of[i];
    if (g == idx.sizes.size()) {
      idx.sizes.push_back(0);
      idx.representatives.push_back(i);
    } else if (g > idx.sizes.size()) {
      throw InvalidInput("group ids must follow order of first appearance");
    }
    ++idx.sizes[g];
  }
  return idx;
}

PatternIndex PatternIndex::singletons(Axis axis, std::size_t n) {
  std::vector<uint32_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<uint32_t>(i);
  return from_assignment(axis, std::move(ids));
}

void PatternIndex::validate() const {
  if (representatives.size() != sizes.size()) {
    throw InvalidInput("pattern index: representatives/sizes length mismatch");
  }
  std::vector<std::size_t> counted(sizes.size(), 0);
  std::vector<bool> seen(sizes.size(), false);
  for (std::size_t i = 0; i < group_of.size(); ++i) {
    const uint32_t g = group_of[i];
    if (g >= sizes.size()) throw InvalidInput("pattern index: group id out of range");
    if (!seen[g]) {
      if (representatives[g] != i) {
        throw InvalidInput("pattern index: representative is not the smallest member");
      }
      seen[g] = true;
    }
    ++counted[g];
  }
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    if (sizes[g] == 0 || counted[g] != sizes[g]) {
      throw InvalidInput("pattern index: group sizes do not match assignment");
    }
  }
}

bool PatternIndex::refines(const PatternIndex& coarser) const {
  if (coarser.size() != size()) return false;
  std::vector<int64_t> parent(num_groups(), -1);
  for (std::size_t i = 0; i < size(); ++i) {
    auto& slot = parent[group_of[i]];
    if (slot < 0) {
      slot = coarser.group_of[i];
    } else if (slot != static_cast<int64_t>(coarser.group_of[i])) {
      return false;
    }
  }
  return true;
}

PatternIndex detect_groups(const DenseMatrix& m, Axis axis, double tolerance) {
  if (!(tolerance >= 0.0)) throw InvalidInput("tolerance must be nonnegative");
  require_finite(m, "matrix");
  return PatternIndex::from_assignment(
      axis, group_rows(vectors_along(m, axis), nullptr, tolerance));
}

PatternIndex refine(const PatternIndex& outer, const DenseMatrix& inner_key,
                    double tolerance) {
  if (!(tolerance >= 0.0)) throw InvalidInput("tolerance must be nonnegative");
  const auto keyed = static_cast<std::size_t>(
      outer.axis == Axis::kRows ? inner_key.rows() : inner_key.cols());
  if (keyed != outer.size()) {
    throw InvalidInput("refine: key has " + std::to_string(keyed) + " " +
                       axis_name(outer.axis) + ", partition covers " +
                       std::to_string(outer.size()));
  }
  require_finite(inner_key, "refinement key");
  return PatternIndex::from_assignment(
      outer.axis,
      group_rows(vectors_along(inner_key, outer.axis), &outer.group_of, tolerance));
}

void AxisPatterns::validate(std::size_t n) const {
  weight.validate();
  product.validate();
  if (weight.size() != n || product.size() != n) {
    throw InvalidInput("axis patterns: partition length differs from n");
  }
  if (!product.refines(weight)) {
    throw InvalidInput("axis patterns: W∘A groups do not refine W groups");
  }
  if (weight_group_of_product.size() != product.num_groups()) {
    throw InvalidInput("axis patterns: parent map has wrong length");
  }
  for (std::size_t g = 0; g < product.num_groups(); ++g) {
    if (weight_group_of_product[g] != weight.group_of[product.representatives[g]]) {
      throw InvalidInput("axis patterns: parent map disagrees with partitions");
    }
  }
  if (static_cast<std::size_t>(weight_vectors.rows()) != weight.num_groups() ||
      static_cast<std::size_t>(weight_vectors.cols()) != n ||
      static_cast<std::size_t>(product_vectors.rows()) != product.num_groups() ||
      static_cast<std::size_t>(product_vectors.cols()) != n) {
    throw InvalidInput("axis patterns: representative vectors have wrong shape");
  }
}

StructuredInstance StructuredInstance::transposed() const {
  StructuredInstance t;
  t.n = n;
  t.r = r;
  t.p = p;
  t.rows = cols;
  t.cols = rows;
  for (PatternIndex* idx : {&t.rows.weight, &t.rows.product}) idx->axis = Axis::kRows;
  for (PatternIndex* idx : {&t.cols.weight, &t.cols.product}) idx->axis = Axis::kCols;
  if (a) t.a = std::make_shared<const DenseMatrix>(a->transpose());
  if (w) t.w = std::make_shared<const DenseMatrix>(w->transpose());
  return t;
}

void StructuredInstance::validate() const {
  rows.validate(n);
  cols.validate(n);
  const std::size_t expected_r =
      std::max(rows.weight.num_groups(), cols.weight.num_groups());
  if (r != expected_r) throw InvalidInput("instance: r disagrees with W patterns");
  const std::size_t g =
      std::max(rows.product.num_groups(), cols.product.num_groups());
  if (p != (g + r - 1) / r) {
    throw InvalidInput("instance: p disagrees with W∘A patterns");
  }
  if ((a == nullptr) != (w == nullptr)) {
    throw InvalidInput("instance: dense A and W must be present together");
  }
}

void assign_rp(StructuredInstance& inst) {
  inst.r = std::max(inst.rows.weight.num_groups(), inst.cols.weight.num_groups());
  const std::size_t g =
      std::max(inst.rows.product.num_groups(), inst.cols.product.num_groups());
  inst.p = inst.r == 0 ? 0 : (g + inst.r - 1) / inst.r;
}

StructuredInstance build_instance(const DenseMatrix& a, const DenseMatrix& w,
                                  double tolerance) {
  if (a.rows() != a.cols() || w.rows() != w.cols() || a.rows() != w.rows()) {
    throw InvalidInput("build_instance: A and W must be square with the same n");
  }
  if (a.rows() == 0) throw InvalidInput("build_instance: empty instance");
  if (!(tolerance >= 0.0)) throw InvalidInput("tolerance must be nonnegative");
  require_finite(a, "A");
  require_finite(w, "W");

  StructuredInstance inst;
  inst.n = static_cast<std::size_t>(a.rows());
  const DenseMatrix wa = w.cwiseProduct(a);
  fill_axis(inst.rows, w, wa, Axis::kRows, tolerance);
  const DenseMatrix wt = w.transpose();
  const DenseMatrix wat = wa.transpose();
  fill_axis(inst.cols, wt, wat, Axis::kCols, tolerance);
  assign_rp(inst);
  inst.a = std::make_shared<const DenseMatrix>(a);
  inst.w = std::make_shared<const DenseMatrix>(w);
  return inst;
}

void assume_rp(const StructuredInstance& inst, std::size_t r, std::size_t p) {
  if (inst.r != r || inst.p != p) {
    throw InvalidInput("expected (r, p) = (" + std::to_string(r) + ", " +
                       std::to_string(p) + "), detected (" +
                       std::to_string(inst.r) + ", " + std::to_string(inst.p) +
                       ")");
  }
}

}  // namespace wlra
