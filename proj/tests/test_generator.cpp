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


#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wlra/generator.hpp"
#include "wlra/grouped_als.hpp"
#include "wlra/weighted_cost.hpp"

using wlra::DenseMatrix;
using wlra::GenSpec;
using wlra::WeightStyle;

namespace {

GenSpec spec_of(std::size_t n, std::size_t r, std::size_t p, std::size_t k_true,
                double noise, WeightStyle style, uint64_t seed) {
  GenSpec s;
  s.n = n;
  s.r = r;
  s.p = p;
  s.k_true = k_true;
  s.noise_sigma = noise;
  s.weight_style = style;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("r = p = 1 gives identical rows") {
  const auto inst = wlra::generate(spec_of(8, 1, 1, 1, 0.0, WeightStyle::kBlockRandom, 1));
  for (Eigen::Index i = 1; i < 8; ++i) {
    CHECK(inst.w->row(i) == inst.w->row(0));
    CHECK(inst.w->row(i).cwiseProduct(inst.a->row(i)) ==
          inst.w->row(0).cwiseProduct(inst.a->row(0)));
  }
  CHECK(inst.r == 1);
  CHECK(inst.p == 1);
}

TEST_CASE("n = 64, r = 4, p = 2 detects 4 weight groups and 8 product groups") {
  const auto inst = wlra::generate(spec_of(64, 4, 2, 2, 0.0, WeightStyle::kBlockRandom, 2));
  const auto w_rows = wlra::detect_groups(*inst.w, wlra::Axis::kRows);
  const auto wa_rows = wlra::detect_groups(inst.w->cwiseProduct(*inst.a), wlra::Axis::kRows);
  CHECK(w_rows.num_groups() == 4);
  CHECK(wa_rows.num_groups() == 8);
}

TEST_CASE("noise-free planted instance is solved to zero") {
  const auto inst = wlra::generate(spec_of(64, 4, 2, 2, 0.0, WeightStyle::kBlockRandom, 3));
  wlra::SolveOptions opts;
  opts.k = 2;
  const auto rep = wlra::solve(inst, opts).second;
  CHECK(rep.final_cost <= 1e-8 * wlra::upper_bound(inst));
}

TEST_CASE("attention mask examples") {
  DenseMatrix want(4, 4);
  want << 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1;
  CHECK(wlra::generate_attention_mask(4, 2) == want);
  CHECK(wlra::generate_attention_mask(6, 6) == DenseMatrix::Ones(6, 6));
  const auto idx = wlra::detect_groups(wlra::generate_attention_mask(64, 8), wlra::Axis::kRows);
  CHECK(idx.num_groups() == 8);
  for (auto s : idx.sizes) CHECK(s == 8);
  CHECK_THROWS_AS(wlra::generate_attention_mask(10, 3), wlra::InvalidInput);
  CHECK_THROWS_AS(wlra::generate_attention_mask(8, 0), wlra::InvalidInput);
}

TEST_CASE("property: planted (r, p) is recovered for every style") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t r = 1 + seed % 4;
    const std::size_t p = 1 + (seed / 4) % 4;
    const auto style = static_cast<WeightStyle>(seed % 3);
    const std::size_t n = 16 * r * p + 8 * (seed % 3);
    const auto inst = wlra::generate(spec_of(n, r, p, 2, 0.0, style, seed));
    CHECK(inst.r == r);
    CHECK(inst.p == p);
    CHECK(inst.w_rows().num_groups() == r);
    CHECK(inst.w_cols().num_groups() == r);
    CHECK(inst.wa_rows().num_groups() == r * p);
    CHECK(inst.wa_cols().num_groups() == r * p);
  }
}

TEST_CASE("generation is deterministic") {
  const auto spec = spec_of(48, 3, 2, 2, 0.1, WeightStyle::kBlockMask01, 9);
  const auto a = wlra::generate_planted(spec);
  const auto b = wlra::generate_planted(spec);
  CHECK(*a.instance.a == *b.instance.a);
  CHECK(*a.instance.w == *b.instance.w);
  CHECK(a.planted_u == b.planted_u);
  CHECK(a.effective_seed == b.effective_seed);
  const auto c = wlra::generate_planted(spec_of(48, 3, 2, 2, 0.1, WeightStyle::kBlockMask01, 10));
  CHECK(*a.instance.a != *c.instance.a);
}

TEST_CASE("zero-noise planted factors realize A") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto style = static_cast<WeightStyle>(seed % 3);
    const auto gen = wlra::generate_planted(spec_of(64, 2 + seed % 3, 2, 2, 0.0, style, seed));
    const double scale = wlra::upper_bound(gen.instance);
    const double cost = wlra::cost_dense(*gen.instance.a, *gen.instance.w, gen.planted_u,
                                         gen.planted_v);
    CHECK(cost <= 1e-16 * scale);
  }
}

TEST_CASE("generator validates its spec") {
  CHECK_THROWS_AS(wlra::generate(spec_of(8, 3, 3, 1, 0.0, WeightStyle::kBlockRandom, 0)),
                  wlra::InvalidInput);
  CHECK_THROWS_AS(wlra::generate(spec_of(8, 2, 2, 9, 0.0, WeightStyle::kBlockRandom, 0)),
                  wlra::InvalidInput);
  CHECK_THROWS_AS(wlra::generate(spec_of(8, 2, 2, 1, -1.0, WeightStyle::kBlockRandom, 0)),
                  wlra::InvalidInput);
  CHECK_THROWS_AS(wlra::generate(spec_of(8, 0, 2, 1, 0.0, WeightStyle::kBlockRandom, 0)),
                  wlra::InvalidInput);
}

TEST_CASE("structured generation agrees with the dense path") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    const auto style = static_cast<WeightStyle>(seed % 3);
    const auto spec = spec_of(96, 3, 2, 2, 0.2, style, seed);
    const auto compact = wlra::generate_structured(spec);
    const auto dense = wlra::generate_planted(spec);
    CHECK(!compact.instance.has_dense());
    CHECK(compact.instance.w_rows() == dense.instance.w_rows());
    CHECK(compact.instance.wa_rows() == dense.instance.wa_rows());
    CHECK(compact.instance.wa_cols() == dense.instance.wa_cols());
    CHECK(compact.instance.rows.product_vectors == dense.instance.rows.product_vectors);
    CHECK(compact.instance.cols.weight_vectors == dense.instance.cols.weight_vectors);
    CHECK(compact.planted_u == dense.planted_u);
  }
}

TEST_CASE("weight style names round-trip") {
  for (auto s : {WeightStyle::kBlockRandom, WeightStyle::kBlockMask01, WeightStyle::kAttentionBlock})
    CHECK(wlra::parse_weight_style(wlra::to_string(s)) == s);
  CHECK(!wlra::parse_weight_style("nope").has_value());
}
