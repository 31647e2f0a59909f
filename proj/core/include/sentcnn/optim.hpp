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
#ifndef SENTCNN_OPTIM_HPP_
#define SENTCNN_OPTIM_HPP_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sentcnn/error.hpp"
#include "sentcnn/network.hpp"
#include "sentcnn/tensor.hpp"

namespace sentcnn {

struct AdaDeltaConfig {
  double rho = 0.95;
  double eps = 1e-6;

  friend bool operator==(const AdaDeltaConfig&, const AdaDeltaConfig&) = default;
};

// Elementwise AdaDelta:
//   Eg2  <- rho Eg2 + (1 - rho) g^2
//   dx    = -sqrt(Edx2 + eps) / sqrt(Eg2 + eps) * g
//   Edx2 <- rho Edx2 + (1 - rho) dx^2
//   p    <- p + dx
template <typename T>
void adadelta_update(std::span<T> param, std::span<const T> grad,
                     std::span<T> eg2, std::span<T> edx2,
                     const AdaDeltaConfig& cfg) {
  if (grad.size() != param.size() || eg2.size() != param.size() ||
      edx2.size() != param.size()) {
    throw InputError("adadelta: shape mismatch");
  }
  const double rho = cfg.rho;
  const double eps = cfg.eps;
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = static_cast<double>(grad[i]);
    const double a = rho * static_cast<double>(eg2[i]) + (1.0 - rho) * g * g;
    const double dx =
        -std::sqrt(static_cast<double>(edx2[i]) + eps) / std::sqrt(a + eps) * g;
    eg2[i] = static_cast<T>(a);
    edx2[i] = static_cast<T>(rho * static_cast<double>(edx2[i]) +
                             (1.0 - rho) * dx * dx);
    param[i] = static_cast<T>(static_cast<double>(param[i]) + dx);
  }
}

// Accumulators for every tensor of a network. Embedding accumulators are
// full V x d tables but only rows present in a sparse gradient are touched.
class AdaDeltaState {
 public:
  AdaDeltaState(const NetworkParams<float>& params, AdaDeltaConfig cfg = {});

  // Throws Error("diverged") before touching anything if a gradient is not
  // finite, and InputError on shape mismatch.
  void step(NetworkParams<float>& params, const Gradients<float>& grads);

  const AdaDeltaConfig& config() const { return cfg_; }

  // Named accumulator tensors for checkpointing: "<tensor>.eg2" and
  // "<tensor>.edx2" for each network tensor, including "embedding".
  struct Slot {
    std::string name;
    Matrix<float>* values;
  };
  std::vector<Slot> slots();

  friend bool operator==(const AdaDeltaState&, const AdaDeltaState&) = default;

 private:
  struct Accum {
    std::string name;
    Matrix<float> eg2;
    Matrix<float> edx2;
    friend bool operator==(const Accum&, const Accum&) = default;
  };
  AdaDeltaConfig cfg_;
  std::vector<Accum> dense_;
  Accum embedding_;
};

}  // namespace sentcnn

#endif  // SENTCNN_OPTIM_HPP_
