// Copyright 2026 The sentcnn Authors.
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
#include "sentcnn/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>

#include "sentcnn/error.hpp"

namespace sentcnn {
namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {
      static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
      static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), b.size());
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw InputError("truncated tensor header");
  }
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_tensor(std::ostream& out, const Matrix<float>& m) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (m.rows() > kMax || m.cols() > kMax) {
    throw Error("tensor too large for 32-bit header");
  }
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (float v : m.flat()) {
    put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  if (!out) throw Error("tensor write failed");
}

Matrix<float> read_tensor(std::istream& in) {
  const std::uint32_t rows = get_u32(in);
  const std::uint32_t cols = get_u32(in);
  Matrix<float> m(rows, cols);
  std::vector<unsigned char> buf(m.size() * 4);
  if (!buf.empty() &&
      !in.read(reinterpret_cast<char*>(buf.data()),
               static_cast<std::streamsize>(buf.size()))) {
    throw InputError("truncated tensor payload");
  }
  auto flat = m.flat();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const unsigned char* p = buf.data() + 4 * i;
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                               (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
    flat[i] = std::bit_cast<float>(bits);
  }
  return m;
}

void save_tensor(const std::filesystem::path& path, const Matrix<float>& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  write_tensor(out, m);
}

Matrix<float> load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open tensor file: " + path.string());
  Matrix<float> m = read_tensor(in);
  if (in.peek() != std::char_traits<char>::eof()) {
    throw InputError("trailing bytes in tensor file: " + path.string());
  }
  return m;
}

}  // namespace sentcnn
