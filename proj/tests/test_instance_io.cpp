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


#include <cstring>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "wlra/generator.hpp"
#include "wlra/instance_io.hpp"

using wlra::DenseMatrix;
using wlra::InstanceFile;

namespace {

InstanceFile sample(std::size_t n, bool with_w, uint64_t seed) {
  InstanceFile f;
  f.a = oracle::random_matrix(n, n, seed);
  if (with_w) f.w = oracle::random_matrix(n, n, seed + 1);
  return f;
}

template <typename T>
T read_le(const std::vector<uint8_t>& bytes, std::size_t at) {
  T v{};
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v = static_cast<T>(v | (static_cast<T>(bytes[at + i]) << (8 * i)));
  return v;
}

}  // namespace

TEST_CASE("header layout is magic, version, n, flags") {
  const auto bytes = wlra::encode_instance(sample(3, true, 1));
  REQUIRE(bytes.size() == wlra::kInstanceHeaderBytes + 2 * 9 * 8);
  CHECK(std::memcmp(bytes.data(), "WLRA", 4) == 0);
  CHECK(read_le<uint16_t>(bytes, 4) == 1);
  CHECK(read_le<uint64_t>(bytes, 6) == 3);
  CHECK(read_le<uint16_t>(bytes, 14) == wlra::kFlagDenseWeights);
  // First payload double is A(0, 0), little-endian.
  const uint64_t bits = read_le<uint64_t>(bytes, 16);
  double first;
  std::memcpy(&first, &bits, sizeof first);
  CHECK(first == sample(3, true, 1).a(0, 0));
}

TEST_CASE("encode then decode is bitwise lossless") {
  const InstanceFile f = sample(7, true, 2);
  const InstanceFile g = wlra::decode_instance(wlra::encode_instance(f));
  CHECK(g.a == f.a);
  REQUIRE(g.w.has_value());
  CHECK(*g.w == *f.w);
  CHECK(!g.sidecar.has_value());
}

TEST_CASE("a file without W means unit weights") {
  const InstanceFile f = sample(4, false, 3);
  const auto bytes = wlra::encode_instance(f);
  CHECK(read_le<uint16_t>(bytes, 14) == 0);
  const InstanceFile g = wlra::decode_instance(bytes);
  CHECK(!g.w.has_value());
  CHECK(g.weights() == DenseMatrix::Ones(4, 4));
}

TEST_CASE("side-car arrays survive the round trip") {
  wlra::GenSpec spec;
  spec.n = 32;
  spec.r = 2;
  spec.p = 2;
  spec.seed = 5;
  const auto inst = wlra::generate(spec);
  InstanceFile f;
  f.a = *inst.a;
  f.w = *inst.w;
  f.sidecar = wlra::sidecar_of(inst);
  const auto bytes = wlra::encode_instance(f);
  CHECK(read_le<uint16_t>(bytes, 14) == (wlra::kFlagDenseWeights | wlra::kFlagSidecar));
  const InstanceFile g = wlra::decode_instance(bytes);
  REQUIRE(g.sidecar.has_value());
  CHECK(*g.sidecar == *f.sidecar);
  CHECK((*g.sidecar)[0] == inst.w_rows().group_of);
  CHECK((*g.sidecar)[3] == inst.wa_cols().group_of);
}

TEST_CASE("corrupt payloads are rejected") {
  auto bytes = wlra::encode_instance(sample(3, true, 4));
  SUBCASE("truncated") {
    bytes.pop_back();
    CHECK_THROWS_AS(wlra::decode_instance(bytes), wlra::IoError);
  }
  SUBCASE("trailing bytes") {
    bytes.push_back(0);
    CHECK_THROWS_AS(wlra::decode_instance(bytes), wlra::IoError);
  }
  SUBCASE("bad magic") {
    bytes[0] = 'X';
    CHECK_THROWS_AS(wlra::decode_instance(bytes), wlra::IoError);
  }
  SUBCASE("bad version") {
    bytes[4] = 2;
    CHECK_THROWS_AS(wlra::decode_instance(bytes), wlra::IoError);
  }
  SUBCASE("unknown flag") {
    bytes[14] |= 0x80;
    CHECK_THROWS_AS(wlra::decode_instance(bytes), wlra::IoError);
  }
  SUBCASE("short header") {
    bytes.resize(10);
    CHECK_THROWS_AS(wlra::decode_instance(bytes), wlra::IoError);
  }
}

TEST_CASE("files on disk round-trip and missing files raise IoError") {
  const auto dir = std::filesystem::temp_directory_path() / "wlra_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "inst.wlra").string();
  const InstanceFile f = sample(5, true, 6);
  wlra::write_instance(path, f);
  const InstanceFile g = wlra::read_instance(path);
  CHECK(g.a == f.a);
  CHECK(*g.w == *f.w);
  CHECK(wlra::read_file(path) == wlra::encode_instance(f));
  CHECK_THROWS_AS(wlra::read_instance((dir / "missing.wlra").string()), wlra::IoError);

  const std::string fpath = (dir / "factors.bin").string();
  const DenseMatrix u = oracle::random_matrix(5, 2, 7);
  const DenseMatrix v = oracle::random_matrix(5, 2, 8);
  wlra::write_factors(fpath, u, v);
  const auto raw = wlra::read_file(fpath);
  REQUIRE(raw.size() == 2 * 5 * 2 * 8);
  double last;
  std::memcpy(&last, raw.data() + raw.size() - 8, 8);
  CHECK(last == v(4, 1));
  std::filesystem::remove_all(dir);
}
