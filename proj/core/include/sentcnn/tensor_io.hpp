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
#ifndef SENTCNN_TENSOR_IO_HPP_
#define SENTCNN_TENSOR_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "sentcnn/tensor.hpp"

namespace sentcnn {

// Binary tensor layout shared by model directories and embedding exports:
//   uint32 rows, uint32 cols   (little-endian)
//   rows * cols IEEE-754 float32 values, little-endian, row-major.
void write_tensor(std::ostream& out, const Matrix<float>& m);
Matrix<float> read_tensor(std::istream& in);

void save_tensor(const std::filesystem::path& path, const Matrix<float>& m);
Matrix<float> load_tensor(const std::filesystem::path& path);

}  // namespace sentcnn

#endif  // SENTCNN_TENSOR_IO_HPP_
