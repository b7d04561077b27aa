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

#include "wlra/instance_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace wlra {
namespace {

class Writer {
 public:
  explicit Writer(std::vector<uint8_t>& out) : out_(out) {}

  void bytes(const char* s, std::size_t len) { out_.insert(out_.end(), s, s + len); }
  template <class T>
  void uint(T value) {
    for (std::size_t b = 0; b < sizeof(T); ++b) {
      out_.push_back(static_cast<uint8_t>(value >> (8 * b)));
    }
  }
  void f64(double x) { uint(std::bit_cast<uint64_t>(x)); }
  void matrix(const DenseMatrix& m) {
    const double* d = m.data();
    for (Eigen::Index i = 0; i < m.size(); ++i) f64(d[i]);
  }

 private:
  std::vector<uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<uint8_t>& in) : in_(in) {}

  template <class T>
  T uint() {
    need(sizeof(T));
    T value = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) {
      value |= static_cast<T>(static_cast<T>(in_[pos_ + b]) << (8 * b));
    }
    pos_ += sizeof(T);
    return value;
  }
  double f64() { return std::bit_cast<double>(uint<uint64_t>()); }
  DenseMatrix matrix(std::size_t n) {
    DenseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double* d = m.data();
    for (Eigen::Index i = 0; i < m.size(); ++i) d[i] = f64();
    return m;
  }
  void need(std::size_t len) const {
    if (in_.size() - pos_ < len) throw IoError("instance file is truncated");
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::vector<uint8_t>& in_;
  std::size_t pos_ = 0;
};

}  // namespace

DenseMatrix InstanceFile::weights() const {
  if (w) return *w;
  return DenseMatrix::Ones(a.rows(), a.cols());
}

std::array<std::vector<uint32_t>, 4> sidecar_of(const StructuredInstance& inst) {
  return {inst.w_rows().group_of, inst.w_cols().group_of, inst.wa_rows().group_of,
          inst.wa_cols().group_of};
}

std::vector<uint8_t> encode_instance(const InstanceFile& file) {
  const auto n = static_cast<std::size_t>(file.a.rows());
  if (file.a.cols() != file.a.rows() ||
      (file.w && (file.w->rows() != file.a.rows() || file.w->cols() != file.a.cols()))) {
    throw InvalidInput("instance file: A and W must be square with the same n");
  }
  uint16_t flags = 0;
  if (file.w) flags |= kFlagDenseWeights;
  if (file.sidecar) {
    for (const auto& ids : *file.sidecar) {
      if (ids.size() != n) throw InvalidInput("instance file: side-car length differs from n");
    }
    flags |= kFlagSidecar;
  }
  std::vector<uint8_t> out;
  out.reserve(kInstanceHeaderBytes + n * n * 8 * (file.w ? 2 : 1) +
              (file.sidecar ? 16 * n : 0));
  Writer wr(out);
  wr.bytes("WLRA", 4);
  wr.uint<uint16_t>(kInstanceVersion);
  wr.uint<uint64_t>(n);
  wr.uint<uint16_t>(flags);
  wr.matrix(file.a);
  if (file.w) wr.matrix(*file.w);
  if (file.sidecar) {
    for (const auto& ids : *file.sidecar) {
      for (uint32_t id : ids) wr.uint<uint32_t>(id);
    }
  }
  return out;
}

InstanceFile decode_instance(const std::vector<uint8_t>& bytes) {
  Reader rd(bytes);
  rd.need(kInstanceHeaderBytes);
  if (std::memcmp(bytes.data(), "WLRA", 4) != 0) throw IoError("instance file: bad magic");
  for (int i = 0; i < 4; ++i) rd.uint<uint8_t>();
  const auto version = rd.uint<uint16_t>();
  if (version != kInstanceVersion) {
    throw IoError("instance file: unsupported version " + std::to_string(version));
  }
  const auto n64 = rd.uint<uint64_t>();
  const auto flags = rd.uint<uint16_t>();
  if ((flags & ~(kFlagDenseWeights | kFlagSidecar)) != 0) {
    throw IoError("instance file: unknown flag bits");
  }
  if (n64 == 0 || n64 > (uint64_t{1} << 24)) throw IoError("instance file: implausible n");
  const auto n = static_cast<std::size_t>(n64);
  const std::size_t expected = kInstanceHeaderBytes +
                               n * n * 8 * ((flags & kFlagDenseWeights) ? 2 : 1) +
                               ((flags & kFlagSidecar) ? 16 * n : 0);
  if (bytes.size() != expected) {
    throw IoError("instance file: payload is " + std::to_string(bytes.size()) +
                  " bytes, header implies " + std::to_string(expected));
  }
  InstanceFile file;
  file.a = rd.matrix(n);
  if (flags & kFlagDenseWeights) file.w = rd.matrix(n);
  if (flags & kFlagSidecar) {
    std::array<std::vector<uint32_t>, 4> ids;
    for (auto& v : ids) {
      v.resize(n);
      for (auto& id : v) id = rd.uint<uint32_t>();
    }
    file.sidecar = std::move(ids);
  }
  return file;
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path);
  return bytes;
}

namespace {

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing " + path);
}

}  // namespace

void write_instance(const std::string& path, const InstanceFile& file) {
  write_bytes(path, encode_instance(file));
}

InstanceFile read_instance(const std::string& path) {
  return decode_instance(read_file(path));
}

void write_factors(const std::string& path, const DenseMatrix& u, const DenseMatrix& v) {
  std::vector<uint8_t> out;
  out.reserve(static_cast<std::size_t>(u.size() + v.size()) * 8);
  Writer wr(out);
  wr.matrix(u);
  wr.matrix(v);
  write_bytes(path, out);
}

}  // namespace wlra
