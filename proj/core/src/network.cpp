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
#include "sentcnn/network.hpp"

#include <cmath>
#include <random>

#include "sentcnn/error.hpp"

namespace sentcnn {

std::string_view sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::kNegative:
      return "negative";
    case Sentiment::kNeutral:
      return "neutral";
    case Sentiment::kPositive:
      return "positive";
  }
  return "?";
}

std::optional<Sentiment> parse_sentiment(std::string_view name) {
  if (name == "negative") return Sentiment::kNegative;
  if (name == "neutral") return Sentiment::kNeutral;
  if (name == "positive") return Sentiment::kPositive;
  return std::nullopt;
}

ArchitectureSpec ArchitectureSpec::preset(std::string_view name,
                                          std::size_t n_max) {
  ArchitectureSpec a;
  a.name = std::string(name);
  a.n_max = n_max;
  if (name == "L1") {
    a.layers = {{300, 5, 0, 0}};
    a.hidden = 300;
  } else if (name == "L2") {
    a.layers = {{200, 4, 4, 2}, {200, 3, 0, 0}};
    a.hidden = 200;
  } else if (name == "L3") {
    a.layers = {{200, 4, 4, 2}, {200, 3, 3, 1}, {200, 2, 0, 0}};
    a.hidden = 200;
  } else {
    throw InputError("unknown architecture '" + std::string(name) +
                     "' (expected L1, L2 or L3)");
  }
  return a;
}

ArchitectureSpec ArchitectureSpec::with_filters(std::size_t m) const {
  if (m < 1) throw InputError("filter count must be >= 1");
  ArchitectureSpec a = *this;
  for (auto& l : a.layers) l.filters = m;
  a.hidden = m;
  return a;
}

std::vector<std::size_t> ArchitectureSpec::shape_walk() const {
  if (layers.empty()) throw InputError("architecture has no layers");
  std::vector<std::size_t> walk = {n_max};
  std::size_t len = n_max;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    len = conv_output_length(len, layers[i].window);
    walk.push_back(len);
    const bool last = i + 1 == layers.size();
    if (last) {
      walk.push_back(1);
    } else if (layers[i].pool_window > 0) {
      len = pool_output_length(len, layers[i].pool_window,
                               layers[i].pool_stride);
      walk.push_back(len);
    }
  }
  return walk;
}

void ArchitectureSpec::validate() const {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  if (classes < 2) throw InputError("need at least two classes");
  if (layers.empty()) throw InputError("architecture has no layers");
  for (const auto& layer : layers) {
    if (layer.filters < 1) throw InputError("filter count must be >= 1");
  }
  if (hidden != layers.back().filters) {
    throw InputError("hidden size must equal the last layer's filter count");
  }
  try {
    shape_walk();
  } catch (const InputError& e) {
    throw InputError("architecture " + name + " does not fit n_max=" +
                     std::to_string(n_max) + ": " + e.what());
  }
}

template <typename T>
std::size_t LayerParams<T>::parameter_count() const {
  std::size_t n = 0;
  for_each_tensor([&n](const std::string&, std::span<const T> v) { n += v.size(); });
  return n;
}

template <typename T>
void LayerParams<T>::zero() {
  for_each_tensor([](const std::string&, std::span<T> v) {
    std::fill(v.begin(), v.end(), T{});
  });
}

namespace {

template <typename T>
void shape_like(LayerParams<T>& dst, const LayerParams<T>& src) {
  dst.conv.clear();
  for (const auto& fb : src.conv) {
    dst.conv.emplace_back(fb.filters(), fb.window, fb.channels);
  }
  dst.hidden_w.resize(src.hidden_w.rows(), src.hidden_w.cols());
  dst.hidden_b.assign(src.hidden_b.size(), T{});
  dst.softmax_w.resize(src.softmax_w.rows(), src.softmax_w.cols());
  dst.softmax_b.assign(src.softmax_b.size(), T{});
}

}  // namespace

NetworkParams<float> build_network(const ArchitectureSpec& arch,
                                   std::size_t vocab_size, std::size_t dim,
                                   const Matrix<float>* pretrained,
                                   std::uint64_t seed) {
  arch.validate();
  if (vocab_size < 2) throw InputError("vocabulary must contain <pad> and <unk>");
  if (dim < 1) throw InputError("embedding dimension must be >= 1");
  if (pretrained != nullptr &&
      (pretrained->rows() != vocab_size || pretrained->cols() != dim)) {
    throw InputError("pretrained embedding table is " +
                     std::to_string(pretrained->rows()) + "x" +
                     std::to_string(pretrained->cols()) + ", expected " +
                     std::to_string(vocab_size) + "x" + std::to_string(dim));
  }

  NetworkParams<float> p;
  std::size_t channels = dim;
  for (const auto& layer : arch.layers) {
    p.conv.emplace_back(layer.filters, layer.window, channels);
    channels = layer.filters;
  }
  p.hidden_w.resize(arch.hidden, channels);
  p.hidden_b.assign(arch.hidden, 0.0f);
  p.softmax_w.resize(arch.classes, arch.hidden);
  p.softmax_b.assign(arch.classes, 0.0f);

  std::uniform_real_distribution<float> u(-0.05f, 0.05f);
  std::mt19937_64 weight_rng(seed);
  for (auto& fb : p.conv) {
    for (float& v : fb.weights.flat()) v = u(weight_rng);
  }
  for (float& v : p.hidden_w.flat()) v = u(weight_rng);
  for (float& v : p.softmax_w.flat()) v = u(weight_rng);

  if (pretrained != nullptr) {
    p.embedding = *pretrained;
  } else {
    std::mt19937_64 embed_rng(seed ^ 0xE3B0C44298FC1C14ULL);
    p.embedding.resize(vocab_size, dim);
    for (float& v : p.embedding.flat()) v = u(embed_rng);
  }
  for (float& v : p.embedding.row(kPadId)) v = 0.0f;
  return p;
}

template <typename To, typename From>
NetworkParams<To> params_cast(const NetworkParams<From>& p) {
  NetworkParams<To> out;
  out.embedding = matrix_cast<To>(p.embedding);
  for (const auto& fb : p.conv) {
    FilterBank<To> c;
    c.window = fb.window;
    c.channels = fb.channels;
    c.weights = matrix_cast<To>(fb.weights);
    c.bias.assign(fb.bias.begin(), fb.bias.end());
    out.conv.push_back(std::move(c));
  }
  out.hidden_w = matrix_cast<To>(p.hidden_w);
  out.hidden_b.assign(p.hidden_b.begin(), p.hidden_b.end());
  out.softmax_w = matrix_cast<To>(p.softmax_w);
  out.softmax_b.assign(p.softmax_b.begin(), p.softmax_b.end());
  return out;
}

template <typename T>
NetworkRunner<T>::NetworkRunner(const NetworkParams<T>& params,
                                const ArchitectureSpec& arch)
    : params_(params), arch_(arch), cache_(arch.layers.size()) {
  arch_.validate();
  if (params_.conv.size() != arch_.layers.size() ||
      params_.hidden_w.rows() != arch_.hidden ||
      params_.softmax_w.rows() != arch_.classes) {
    throw InputError("network parameters do not match the architecture");
  }
  for (std::size_t i = 0; i < arch_.layers.size(); ++i) {
    if (params_.conv[i].filters() != arch_.layers[i].filters ||
        params_.conv[i].window != arch_.layers[i].window) {
      throw InputError("conv layer " + std::to_string(i + 1) +
                       " does not match the architecture");
    }
    conv_wt_.push_back(transpose(params_.conv[i].weights));
  }
  hidden_.resize(arch_.hidden);
  logits_.resize(arch_.classes);
}

template <typename T>
void NetworkRunner<T>::run_forward(std::span<const TokenId> ids) {
  if (ids.size() != arch_.n_max) {
    throw InputError("expected " + std::to_string(arch_.n_max) +
                     " token ids, got " + std::to_string(ids.size()));
  }
  const std::size_t d = params_.dim();
  sentence_.resize(ids.size(), d);
  for (std::size_t t = 0; t < ids.size(); ++t) {
    if (ids[t] >= params_.vocab_size()) {
      throw InputError("token id " + std::to_string(ids[t]) +
                       " out of range for vocabulary of " +
                       std::to_string(params_.vocab_size()));
    }
    const auto row = params_.embedding.row(ids[t]);
    std::copy(row.begin(), row.end(), sentence_.row(t).begin());
  }

  const FeatureMap<T>* input = &sentence_;
  for (std::size_t i = 0; i < arch_.layers.size(); ++i) {
    const auto& spec = arch_.layers[i];
    LayerCache& lc = cache_[i];
    conv1d_forward(*input, params_.conv[i], conv_wt_[i], lc.activation, scratch_);
    relu_inplace(lc.activation);
    if (i + 1 == arch_.layers.size()) {
      maxpool_forward(lc.activation, lc.activation.rows(), 1, lc.pool);
    } else if (spec.pool_window > 0) {
      maxpool_forward(lc.activation, spec.pool_window, spec.pool_stride, lc.pool);
      input = &lc.pool.out;
    } else {
      input = &lc.activation;
    }
  }

  const auto pooled = cache_.back().pool.out.row(0);
  dense_forward<T>(params_.hidden_w, params_.hidden_b, pooled, hidden_);
  for (T& h : hidden_) h = h > T{} ? h : T{};
  dense_forward<T>(params_.softmax_w, params_.softmax_b, hidden_, logits_);
}

template <typename T>
std::vector<T> NetworkRunner<T>::forward(std::span<const TokenId> ids) {
  run_forward(ids);
  return softmax<T>(logits_);
}

template <typename T>
std::size_t NetworkRunner<T>::predict(std::span<const TokenId> ids) {
  const auto probs = forward(ids);
  return argmax<T>(probs);
}

template <typename T>
void NetworkRunner<T>::accumulate_backward(std::span<const TokenId> ids,
                                           std::span<const T> dlogits,
                                           Gradients<T>& grads,
                                           bool embeddings) {
  const std::size_t m = arch_.hidden;
  std::vector<T> d_hidden(m);
  dense_backward_accumulate<T>(params_.softmax_w, hidden_, dlogits,
                               grads.softmax_w, grads.softmax_b, d_hidden,
                               scratch_);
  for (std::size_t j = 0; j < m; ++j) {
    if (!(hidden_[j] > T{})) d_hidden[j] = T{};
  }
  const auto pooled = cache_.back().pool.out.row(0);
  std::vector<T> d_pooled(pooled.size());
  dense_backward_accumulate<T>(params_.hidden_w, pooled, d_hidden,
                               grads.hidden_w, grads.hidden_b, d_pooled,
                               scratch_);

  // grad_a_ carries the gradient w.r.t. the current layer's relu output.
  FeatureMap<T> d_top(1, d_pooled.size());
  std::copy(d_pooled.begin(), d_pooled.end(), d_top.data());
  maxpool_backward(cache_.back().pool, d_top, grad_a_);

  for (std::size_t li = arch_.layers.size(); li-- > 0;) {
    LayerCache& lc = cache_[li];
    relu_backward_inplace(lc.activation, grad_a_);
    const FeatureMap<T>* layer_input = &sentence_;
    if (li > 0) {
      const auto& prev = arch_.layers[li - 1];
      layer_input = prev.pool_window > 0 ? &cache_[li - 1].pool.out
                                         : &cache_[li - 1].activation;
    }
    const bool need_input = li > 0 || embeddings;
    conv1d_backward_accumulate(*layer_input, params_.conv[li], grad_a_,
                               grads.conv[li].weights, grads.conv[li].bias,
                               need_input ? &grad_b_ : nullptr, scratch_);
    if (li > 0) {
      const auto& prev = arch_.layers[li - 1];
      if (prev.pool_window > 0) {
        maxpool_backward(cache_[li - 1].pool, grad_b_, grad_a_);
      } else {
        std::swap(grad_a_, grad_b_);
      }
    }
  }

  if (!embeddings) return;
  const std::size_t d = params_.dim();
  for (std::size_t t = 0; t < ids.size(); ++t) {
    if (ids[t] == kPadId) continue;
    auto [it, inserted] = grads.embedding.try_emplace(ids[t]);
    if (inserted) it->second.assign(d, T{});
    const auto g = grad_b_.row(t);
    for (std::size_t k = 0; k < d; ++k) it->second[k] += g[k];
  }
}

template <typename T>
LossAndGrads<T> NetworkRunner<T>::loss_and_grads(
    std::span<const LabeledIds> batch, const LossOptions& opts) {
  if (batch.empty()) throw InputError("empty batch");
  LossAndGrads<T> out;
  shape_like<T>(out.grads, params_);
  const T scale = static_cast<T>(1.0 / static_cast<double>(batch.size()));
  double total = 0.0;
  for (const auto& ex : batch) {
    if (ex.label >= arch_.classes) throw InputError("label out of range");
    run_forward(ex.ids);
    const auto sx = softmax_xent<T>(logits_, ex.label);
    total += sx.loss;
    std::vector<T> dlogits(sx.dlogits);
    for (T& g : dlogits) g *= scale;
    accumulate_backward(ex.ids, dlogits, out.grads, !opts.freeze_embeddings);
  }
  out.loss = total / static_cast<double>(batch.size());

  if (opts.weight_decay > 0.0) {
    const double lambda = opts.weight_decay;
    auto decay = [&](const Matrix<T>& w, Matrix<T>& g) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double v = static_cast<double>(w.flat()[i]);
        out.loss += 0.5 * lambda * v * v;
        g.flat()[i] += static_cast<T>(lambda * v);
      }
    };
    for (std::size_t i = 0; i < params_.conv.size(); ++i) {
      decay(params_.conv[i].weights, out.grads.conv[i].weights);
    }
    decay(params_.hidden_w, out.grads.hidden_w);
    decay(params_.softmax_w, out.grads.softmax_w);
  }
  out.grads.embedding.erase(kPadId);
  return out;
}

template <typename T>
std::vector<T> forward(const NetworkParams<T>& params,
                       const ArchitectureSpec& arch,
                       std::span<const TokenId> ids) {
  return NetworkRunner<T>(params, arch).forward(ids);
}

template <typename T>
std::size_t predict(const NetworkParams<T>& params, const ArchitectureSpec& arch,
                    std::span<const TokenId> ids) {
  return NetworkRunner<T>(params, arch).predict(ids);
}

template <typename T>
LossAndGrads<T> loss_and_grads(const NetworkParams<T>& params,
                               const ArchitectureSpec& arch,
                               std::span<const LabeledIds> batch,
                               const LossOptions& opts) {
  return NetworkRunner<T>(params, arch).loss_and_grads(batch, opts);
}

template struct LayerParams<float>;
template struct LayerParams<double>;
template class NetworkRunner<float>;
template class NetworkRunner<double>;
template NetworkParams<double> params_cast<double, float>(const NetworkParams<float>&);
template NetworkParams<float> params_cast<float, double>(const NetworkParams<double>&);
template NetworkParams<float> params_cast<float, float>(const NetworkParams<float>&);
template std::vector<float> forward(const NetworkParams<float>&,
                                    const ArchitectureSpec&,
                                    std::span<const TokenId>);
template std::vector<double> forward(const NetworkParams<double>&,
                                     const ArchitectureSpec&,
                                     std::span<const TokenId>);
template std::size_t predict(const NetworkParams<float>&, const ArchitectureSpec&,
                             std::span<const TokenId>);
template std::size_t predict(const NetworkParams<double>&, const ArchitectureSpec&,
                             std::span<const TokenId>);
template LossAndGrads<float> loss_and_grads(const NetworkParams<float>&,
                                            const ArchitectureSpec&,
                                            std::span<const LabeledIds>,
                                            const LossOptions&);
template LossAndGrads<double> loss_and_grads(const NetworkParams<double>&,
                                             const ArchitectureSpec&,
                                             std::span<const LabeledIds>,
                                             const LossOptions&);

}  // namespace sentcnn
