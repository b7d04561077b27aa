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

#include "wlra/generator.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wlra/random.hpp"

namespace wlra {
namespace {

constexpr int kMaxAttempts = 8;

// Cell-level description; tiling it gives the full instance.
struct CellModel {
  std::size_t n = 0;
  std::size_t cells = 0;  // r·p
  std::size_t p = 0;
  DenseMatrix weight_grid;  // r x r
  DenseMatrix a_cells;      // cells x cells
  DenseMatrix uc;           // cells x k_true
  DenseMatrix vc;           // cells x k_true

  std::size_t cell_of(std::size_t i) const { return i * cells / n; }
  std::size_t band_of_cell(std::size_t c) const { return c / p; }
  std::size_t band_of(std::size_t i) const { return band_of_cell(cell_of(i)); }

  double w(std::size_t i, std::size_t j) const {
    return weight_grid(static_cast<Eigen::Index>(band_of(i)),
                       static_cast<Eigen::Index>(band_of(j)));
  }
  double a(std::size_t i, std::size_t j) const {
    return a_cells(static_cast<Eigen::Index>(cell_of(i)),
                   static_cast<Eigen::Index>(cell_of(j)));
  }
};

std::vector<std::size_t> shuffled(std::size_t m, uint64_t key) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = m; i > 1; --i) {
    const auto j = static_cast<std::size_t>(random::uniform(key, i) * static_cast<double>(i));
    std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
  }
  return perm;
}

DenseMatrix weight_grid(const GenSpec& spec, uint64_t seed) {
  const auto r = static_cast<Eigen::Index>(spec.r);
  DenseMatrix g(r, r);
  switch (spec.weight_style) {
    case WeightStyle::kBlockRandom: {
      const uint64_t key = random::derive(seed, 1);
      for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
          g(i, j) = 0.5 + random::uniform(key, static_cast<uint64_t>(i * r + j));
        }
      }
      break;
    }
    case WeightStyle::kAttentionBlock:
    case WeightStyle::kBlockMask01: {
      // Lower-triangular ones: distinct rows and columns, no empty band.
      DenseMatrix lower(r, r);
      for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) lower(i, j) = j <= i ? 1.0 : 0.0;
      }
      if (spec.weight_style == WeightStyle::kAttentionBlock) return lower;
      const auto rows = shuffled(spec.r, random::derive(seed, 5, 1));
      const auto cols = shuffled(spec.r, random::derive(seed, 5, 2));
      for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
          g(i, j) = lower(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]),
                          static_cast<Eigen::Index>(cols[static_cast<std::size_t>(j)]));
        }
      }
      break;
    }
  }
  return g;
}

CellModel draw_model(const GenSpec& spec, uint64_t seed) {
  CellModel m;
  m.n = spec.n;
  m.p = spec.p;
  m.cells = spec.r * spec.p;
  m.weight_grid = weight_grid(spec, seed);
  const auto c = static_cast<Eigen::Index>(m.cells);
  const auto k = static_cast<Eigen::Index>(spec.k_true);
  m.uc.resize(c, k);
  m.vc.resize(c, k);
  const uint64_t ukey = random::derive(seed, 2);
  const uint64_t vkey = random::derive(seed, 3);
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      m.uc(i, j) = random::normal(ukey, static_cast<uint64_t>(i * k + j));
      m.vc(i, j) = random::normal(vkey, static_cast<uint64_t>(i * k + j));
    }
  }
  m.a_cells = m.uc * m.vc.transpose();
  if (spec.noise_sigma > 0.0) {
    const uint64_t nkey = random::derive(seed, 4);
    for (Eigen::Index i = 0; i < c; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) {
        m.a_cells(i, j) +=
            spec.noise_sigma * random::normal(nkey, static_cast<uint64_t>(i * c + j));
      }
    }
  }
  return m;
}

// The planted counts hold for the tiled matrices iff they hold on the cell
// grid, because every cell and band is nonempty.
bool is_generic(const CellModel& m, std::size_t r) {
  const auto c = static_cast<Eigen::Index>(m.cells);
  DenseMatrix w_cells(c, c);
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      w_cells(i, j) = m.weight_grid(static_cast<Eigen::Index>(m.band_of_cell(static_cast<std::size_t>(i))),
                                    static_cast<Eigen::Index>(m.band_of_cell(static_cast<std::size_t>(j))));
    }
  }
  const DenseMatrix wa_cells = w_cells.cwiseProduct(m.a_cells);
  for (Axis axis : {Axis::kRows, Axis::kCols}) {
    const PatternIndex wg = detect_groups(w_cells, axis);
    if (wg.num_groups() != r) return false;
    if (refine(wg, wa_cells).num_groups() != m.cells) return false;
  }
  return true;
}

void fill_side(AxisPatterns& side, const CellModel& m, std::size_t r, Axis axis) {
  const std::size_t n = m.n;
  std::vector<uint32_t> band_ids(n), cell_ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell_ids[i] = static_cast<uint32_t>(m.cell_of(i));
    band_ids[i] = static_cast<uint32_t>(m.band_of(i));
  }
  side.weight = PatternIndex::from_assignment(axis, std::move(band_ids));
  side.product = PatternIndex::from_assignment(axis, std::move(cell_ids));
  side.weight_group_of_product.resize(m.cells);
  for (std::size_t c = 0; c < m.cells; ++c) {
    side.weight_group_of_product[c] = static_cast<uint32_t>(m.band_of_cell(c));
  }

  const auto ni = static_cast<Eigen::Index>(n);
  side.weight_vectors.resize(static_cast<Eigen::Index>(r), ni);
  side.product_vectors.resize(static_cast<Eigen::Index>(m.cells), ni);
  // Vector of row i is W(i, ·); vector of column j is W(·, j).
  auto at = [&](auto fn, std::size_t vec_index, std::size_t pos) {
    return axis == Axis::kRows ? fn(vec_index, pos) : fn(pos, vec_index);
  };
  for (std::size_t b = 0; b < r; ++b) {
    const std::size_t rep = side.weight.representatives[b];
    for (std::size_t j = 0; j < n; ++j) {
      side.weight_vectors(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j)) =
          at([&](std::size_t i, std::size_t jj) { return m.w(i, jj); }, rep, j);
    }
  }
  for (std::size_t c = 0; c < m.cells; ++c) {
    const std::size_t rep = side.product.representatives[c];
    for (std::size_t j = 0; j < n; ++j) {
      side.product_vectors(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) =
          at([&](std::size_t i, std::size_t jj) { return m.w(i, jj) * m.a(i, jj); }, rep, j);
    }
  }
}

std::pair<GeneratedInstance, CellModel> generate_model(const GenSpec& spec) {
  spec.validate();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const uint64_t seed = attempt == 0
                              ? spec.seed
                              : random::derive(spec.seed, static_cast<uint64_t>(attempt), 0xc011);
    CellModel m = draw_model(spec, seed);
    if (!is_generic(m, spec.r)) continue;

    GeneratedInstance out;
    out.effective_seed = seed;
    out.instance.n = spec.n;
    fill_side(out.instance.rows, m, spec.r, Axis::kRows);
    fill_side(out.instance.cols, m, spec.r, Axis::kCols);
    assign_rp(out.instance);
    const auto n = static_cast<Eigen::Index>(spec.n);
    const auto k = static_cast<Eigen::Index>(spec.k_true);
    out.planted_u.resize(n, k);
    out.planted_v.resize(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = static_cast<Eigen::Index>(m.cell_of(static_cast<std::size_t>(i)));
      out.planted_u.row(i) = m.uc.row(c);
      out.planted_v.row(i) = m.vc.row(c);
    }
    return {std::move(out), std::move(m)};
  }
  throw GenerationFailure("could not draw an instance in generic position after " +
                          std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace

std::string to_string(WeightStyle style) {
  switch (style) {
    case WeightStyle::kBlockRandom: return "block_random";
    case WeightStyle::kBlockMask01: return "block_mask01";
    case WeightStyle::kAttentionBlock: return "attention_block";
  }
  return "unknown";
}

std::optional<WeightStyle> parse_weight_style(const std::string& name) {
  if (name == "block_random") return WeightStyle::kBlockRandom;
  if (name == "block_mask01") return WeightStyle::kBlockMask01;
  if (name == "attention_block") return WeightStyle::kAttentionBlock;
  return std::nullopt;
}

void GenSpec::validate() const {
  if (n == 0 || r == 0 || p == 0 || k_true == 0) {
    throw InvalidInput("gen: n, r, p, k_true must be positive");
  }
  if (r * p > n) {
    throw InvalidInput("gen: r·p = " + std::to_string(r * p) + " exceeds n = " +
                       std::to_string(n));
  }
  if (k_true > n) throw InvalidInput("gen: k_true exceeds n");
  if (!(noise_sigma >= 0.0)) throw InvalidInput("gen: noise must be nonnegative");
}

GeneratedInstance generate_structured(const GenSpec& spec) {
  return generate_model(spec).first;
}

GeneratedInstance generate_planted(const GenSpec& spec) {
  auto [out, m] = generate_model(spec);
  const auto n = static_cast<Eigen::Index>(spec.n);
  DenseMatrix a(n, n), w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = m.a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      w(i, j) = m.w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  StructuredInstance dense = build_instance(a, w);
  if (dense.r != spec.r || dense.p != spec.p ||
      dense.rows.product.group_of != out.instance.rows.product.group_of ||
      dense.cols.product.group_of != out.instance.cols.product.group_of) {
    throw GenerationFailure("detected structure differs from the planted one");
  }
  out.instance = std::move(dense);
  return std::move(out);
}

StructuredInstance generate(const GenSpec& spec) {
  return generate_planted(spec).instance;
}

DenseMatrix generate_attention_mask(std::size_t n, std::size_t block) {
  if (n == 0 || block == 0 || n % block != 0) {
    throw InvalidInput("attention mask: block must divide n");
  }
  const auto ni = static_cast<Eigen::Index>(n);
  const auto b = static_cast<Eigen::Index>(block);
  DenseMatrix mask(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) mask(i, j) = i / b >= j / b ? 1.0 : 0.0;
  }
  return mask;
}

}  // namespace wlra
