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
#include "sentcnn/model_io.hpp"

#include <algorithm>
#include <fstream>

#include "sentcnn/config.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/tensor_io.hpp"

namespace sentcnn {
namespace {

constexpr int kFormatVersion = 1;

Matrix<float> as_row(std::span<const float> v) {
  Matrix<float> m(1, v.size());
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

std::vector<float> read_vector(const std::filesystem::path& path,
                               std::size_t expected) {
  const Matrix<float> m = load_tensor(path);
  if (m.rows() != 1 || m.cols() != expected) {
    throw InputError(path.string() + ": expected 1x" + std::to_string(expected));
  }
  return std::vector<float>(m.flat().begin(), m.flat().end());
}

Matrix<float> read_matrix(const std::filesystem::path& path, std::size_t rows,
                          std::size_t cols) {
  Matrix<float> m = load_tensor(path);
  if (m.rows() != rows || m.cols() != cols) {
    throw InputError(path.string() + ": expected " + std::to_string(rows) +
                     "x" + std::to_string(cols) + ", found " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return m;
}

std::string slot_file(const std::string& slot) {
  std::string name = slot;
  std::replace(name.begin(), name.end(), '.', '_');
  return "adadelta_" + name + ".bin";
}

}  // namespace

void save_model(const std::filesystem::path& dir, const ArchitectureSpec& arch,
                const Vocabulary& vocab, const NetworkParams<float>& params,
                AdaDeltaState* optimizer) {
  std::filesystem::create_directories(dir);
  if (params.vocab_size() != vocab.size()) {
    throw InputError("embedding rows do not match vocabulary size");
  }
  {
    std::ofstream out(dir / "manifest.txt", std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + (dir / "manifest.txt").string());
    out << "format_version=" << kFormatVersion << '\n'
        << "arch=" << arch.name << '\n'
        << "V=" << params.vocab_size() << '\n'
        << "d=" << params.dim() << '\n'
        << "n_max=" << arch.n_max << '\n'
        << "K=" << arch.classes << '\n'
        << "layers=" << arch.layers.size() << '\n'
        << "hidden=" << arch.hidden << '\n';
    for (std::size_t i = 0; i < arch.layers.size(); ++i) {
      const auto& l = arch.layers[i];
      const std::string p = "conv" + std::to_string(i + 1);
      out << p << "_filters=" << l.filters << '\n'
          << p << "_window=" << l.window << '\n'
          << p << "_pool_window=" << l.pool_window << '\n'
          << p << "_pool_stride=" << l.pool_stride << '\n';
    }
    if (optimizer != nullptr) {
      out << "optimizer=adadelta\n"
          << "adadelta_rho=" << format_double(optimizer->config().rho) << '\n'
          << "adadelta_eps=" << format_double(optimizer->config().eps) << '\n';
    }
  }
  vocab.save(dir / "vocab.tsv");
  save_tensor(dir / "embedding.bin", params.embedding);
  for (std::size_t i = 0; i < params.conv.size(); ++i) {
    const std::string p = "conv" + std::to_string(i + 1);
    save_tensor(dir / (p + "_w.bin"), params.conv[i].weights);
    save_tensor(dir / (p + "_b.bin"), as_row(params.conv[i].bias));
  }
  save_tensor(dir / "hidden_w.bin", params.hidden_w);
  save_tensor(dir / "hidden_b.bin", as_row(params.hidden_b));
  save_tensor(dir / "softmax_w.bin", params.softmax_w);
  save_tensor(dir / "softmax_b.bin", as_row(params.softmax_b));
  if (optimizer != nullptr) {
    for (const auto& slot : optimizer->slots()) {
      save_tensor(dir / slot_file(slot.name), *slot.values);
    }
  }
}

Model load_model(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InputError("model directory not found: " + dir.string());
  }
  const KeyValueConfig m = KeyValueConfig::load(dir / "manifest.txt");
  if (m.get_uint("format_version", 0) != kFormatVersion) {
    throw InputError("unsupported model format_version in " + dir.string());
  }
  ArchitectureSpec arch;
  arch.name = m.require_string("arch");
  arch.n_max = m.get_uint("n_max", 0);
  arch.classes = m.get_uint("K", 0);
  arch.hidden = m.get_uint("hidden", 0);
  const std::size_t layers = m.get_uint("layers", 0);
  for (std::size_t i = 0; i < layers; ++i) {
    const std::string p = "conv" + std::to_string(i + 1);
    ConvLayerSpec l;
    l.filters = m.get_uint(p + "_filters", 0);
    l.window = m.get_uint(p + "_window", 0);
    l.pool_window = m.get_uint(p + "_pool_window", 0);
    l.pool_stride = m.get_uint(p + "_pool_stride", 0);
    arch.layers.push_back(l);
  }
  arch.validate();
  const std::size_t v = m.get_uint("V", 0);
  const std::size_t d = m.get_uint("d", 0);

  Vocabulary vocab = Vocabulary::load(dir / "vocab.tsv");
  if (vocab.size() != v) {
    throw InputError("vocab.tsv has " + std::to_string(vocab.size()) +
                     " entries, manifest says V=" + std::to_string(v));
  }
  NetworkParams<float> params;
  params.embedding = read_matrix(dir / "embedding.bin", v, d);
  std::size_t channels = d;
  for (std::size_t i = 0; i < arch.layers.size(); ++i) {
    const std::string p = "conv" + std::to_string(i + 1);
    const auto& l = arch.layers[i];
    FilterBank<float> fb(l.filters, l.window, channels);
    fb.weights = read_matrix(dir / (p + "_w.bin"), l.filters, l.window * channels);
    fb.bias = read_vector(dir / (p + "_b.bin"), l.filters);
    params.conv.push_back(std::move(fb));
    channels = l.filters;
  }
  params.hidden_w = read_matrix(dir / "hidden_w.bin", arch.hidden, channels);
  params.hidden_b = read_vector(dir / "hidden_b.bin", arch.hidden);
  params.softmax_w = read_matrix(dir / "softmax_w.bin", arch.classes, arch.hidden);
  params.softmax_b = read_vector(dir / "softmax_b.bin", arch.classes);
  return Model{std::move(arch), std::move(vocab), std::move(params)};
}

std::optional<AdaDeltaState> load_optimizer_state(
    const std::filesystem::path& dir, const NetworkParams<float>& params) {
  const KeyValueConfig m = KeyValueConfig::load(dir / "manifest.txt");
  if (m.get_string("optimizer", "") != "adadelta") return std::nullopt;
  AdaDeltaConfig cfg;
  cfg.rho = m.get_double("adadelta_rho", cfg.rho);
  cfg.eps = m.get_double("adadelta_eps", cfg.eps);
  AdaDeltaState state(params, cfg);
  for (const auto& slot : state.slots()) {
    *slot.values = read_matrix(dir / slot_file(slot.name), slot.values->rows(),
                               slot.values->cols());
  }
  return state;
}

}  // namespace sentcnn
