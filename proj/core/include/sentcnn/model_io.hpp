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
#ifndef SENTCNN_MODEL_IO_HPP_
#define SENTCNN_MODEL_IO_HPP_

#include <filesystem>
#include <optional>

#include "sentcnn/network.hpp"
#include "sentcnn/optim.hpp"
#include "sentcnn/vocab.hpp"

namespace sentcnn {

// A model directory holds
//   manifest.txt   key=value lines (format_version=1, arch, V, d, n_max, K,
//                  per-layer dims)
//   vocab.tsv
//   embedding.bin, conv<i>_w.bin, conv<i>_b.bin, hidden_w.bin, hidden_b.bin,
//   softmax_w.bin, softmax_b.bin
// and optionally adadelta_<tensor>_{eg2,edx2}.bin accumulators for exact
// resumption. Every .bin file uses the tensor layout from tensor_io.hpp;
// bias vectors are stored as 1 x n.
struct Model {
  ArchitectureSpec arch;
  Vocabulary vocab;
  NetworkParams<float> params;
};

void save_model(const std::filesystem::path& dir, const ArchitectureSpec& arch,
                const Vocabulary& vocab, const NetworkParams<float>& params,
                AdaDeltaState* optimizer = nullptr);

Model load_model(const std::filesystem::path& dir);

// Restores accumulators saved next to `params`; nullopt if none were saved.
std::optional<AdaDeltaState> load_optimizer_state(
    const std::filesystem::path& dir, const NetworkParams<float>& params);

}  // namespace sentcnn

#endif  // SENTCNN_MODEL_IO_HPP_
