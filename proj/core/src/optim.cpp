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
#include "sentcnn/optim.hpp"

#include <algorithm>

namespace sentcnn {
namespace {

template <typename Range>
bool all_finite(const Range& r) {
  return std::all_of(r.begin(), r.end(),
                     [](float v) { return std::isfinite(v); });
}

}  // namespace

AdaDeltaState::AdaDeltaState(const NetworkParams<float>& params,
                             AdaDeltaConfig cfg)
    : cfg_(cfg) {
  if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) {
    throw InputError("adadelta rho must be in (0, 1)");
  }
  if (!(cfg.eps > 0.0)) throw InputError("adadelta eps must be > 0");
  params.for_each_tensor([this](const std::string& name,
                                std::span<const float> v) {
    dense_.push_back({name, Matrix<float>(1, v.size()), Matrix<float>(1, v.size())});
  });
  embedding_ = {"embedding",
                Matrix<float>(params.embedding.rows(), params.embedding.cols()),
                Matrix<float>(params.embedding.rows(), params.embedding.cols())};
}

void AdaDeltaState::step(NetworkParams<float>& params,
                         const Gradients<float>& grads) {
  bool finite = true;
  std::size_t count = 0;
  grads.for_each_tensor([&](const std::string&, std::span<const float> g) {
    finite = finite && all_finite(g);
    ++count;
  });
  for (const auto& [id, row] : grads.embedding) {
    finite = finite && all_finite(row);
    if (id >= params.embedding.rows() || row.size() != params.embedding.cols()) {
      throw InputError("adadelta: embedding gradient shape mismatch");
    }
  }
  if (count != dense_.size()) throw InputError("adadelta: shape mismatch");
  if (!finite) throw Error("diverged");

  std::vector<std::span<const float>> g_views;
  grads.for_each_tensor([&g_views](const std::string&, std::span<const float> g) {
    g_views.push_back(g);
  });
  std::size_t i = 0;
  params.for_each_tensor([&](const std::string&, std::span<float> p) {
    Accum& acc = dense_[i];
    adadelta_update<float>(p, g_views[i], acc.eg2.flat(), acc.edx2.flat(), cfg_);
    ++i;
  });
  for (const auto& [id, row] : grads.embedding) {
    if (id == kPadId) continue;
    adadelta_update<float>(params.embedding.row(id), row,
                           embedding_.eg2.row(id), embedding_.edx2.row(id),
                           cfg_);
  }
}

std::vector<AdaDeltaState::Slot> AdaDeltaState::slots() {
  std::vector<Slot> out;
  for (auto& acc : dense_) {
    out.push_back({acc.name + ".eg2", &acc.eg2});
    out.push_back({acc.name + ".edx2", &acc.edx2});
  }
  out.push_back({"embedding.eg2", &embedding_.eg2});
  out.push_back({"embedding.edx2", &embedding_.edx2});
  return out;
}

}  // namespace sentcnn
