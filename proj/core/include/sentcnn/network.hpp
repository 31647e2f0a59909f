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
#ifndef SENTCNN_NETWORK_HPP_
#define SENTCNN_NETWORK_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentcnn/nncore.hpp"
#include "sentcnn/tensor.hpp"
#include "sentcnn/vocab.hpp"

namespace sentcnn {

inline constexpr std::size_t kNumClasses = 3;

// Sentiment classes in output order.
enum class Sentiment : std::uint8_t { kNegative = 0, kNeutral = 1, kPositive = 2 };

std::string_view sentiment_name(Sentiment s);
std::optional<Sentiment> parse_sentiment(std::string_view name);

struct ConvLayerSpec {
  std::size_t filters = 0;
  std::size_t window = 0;
  // Intermediate max-pool after this layer's relu; 0 means none. The last
  // layer is always followed by max-over-time pooling instead.
  std::size_t pool_window = 0;
  std::size_t pool_stride = 0;

  friend bool operator==(const ConvLayerSpec&, const ConvLayerSpec&) = default;
};

// Embedding -> [conv -> relu -> pool]* -> max-over-time -> hidden relu ->
// softmax.
struct ArchitectureSpec {
  std::string name;
  std::vector<ConvLayerSpec> layers;
  std::size_t hidden = 0;
  std::size_t classes = kNumClasses;
  std::size_t n_max = 60;

  // L1: 1 layer, 300 filters, h=5.
  // L2: 2 layers, 200 filters, h=(4,3), pool (w=4, st=2) after layer 1.
  // L3: 3 layers, 200 filters, h=(4,3,2), pools (4,2) and (3,1).
  static ArchitectureSpec preset(std::string_view name, std::size_t n_max = 60);

  // Same topology with every filter count and the hidden size set to m.
  ArchitectureSpec with_filters(std::size_t m) const;

  // Sequence lengths through the network: n_max, conv1 out, [pool1 out,
  // conv2 out, ...], 1 (after max-over-time). Throws if some stage would be
  // empty.
  std::vector<std::size_t> shape_walk() const;

  void validate() const;

  friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

// Trainable tensors other than the embedding table.
template <typename T>
struct LayerParams {
  std::vector<FilterBank<T>> conv;
  Matrix<T> hidden_w;  // m x m
  std::vector<T> hidden_b;
  Matrix<T> softmax_w;  // K x m
  std::vector<T> softmax_b;

  // Visits (name, values) for every tensor in a fixed order: conv1_w,
  // conv1_b, ..., hidden_w, hidden_b, softmax_w, softmax_b.
  template <typename F>
  void for_each_tensor(F&& f) {
    for (std::size_t i = 0; i < conv.size(); ++i) {
      const std::string p = "conv" + std::to_string(i + 1);
      f(p + "_w", conv[i].weights.flat());
      f(p + "_b", std::span<T>(conv[i].bias));
    }
    f(std::string("hidden_w"), hidden_w.flat());
    f(std::string("hidden_b"), std::span<T>(hidden_b));
    f(std::string("softmax_w"), softmax_w.flat());
    f(std::string("softmax_b"), std::span<T>(softmax_b));
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    const_cast<LayerParams*>(this)->for_each_tensor(
        [&f](const std::string& name, std::span<T> v) {
          f(name, std::span<const T>(v.data(), v.size()));
        });
  }

  std::size_t parameter_count() const;
  void zero();

  friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

// theta = {X, F_i, b_i, W, b, S, a}.
template <typename T>
struct NetworkParams : LayerParams<T> {
  Matrix<T> embedding;  // V x d

  std::size_t vocab_size() const { return embedding.rows(); }
  std::size_t dim() const { return embedding.cols(); }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

// Embedding gradient: only rows of ids present in the batch, keyed by id.
template <typename T>
using SparseRows = std::map<TokenId, std::vector<T>>;

template <typename T>
struct Gradients : LayerParams<T> {
  SparseRows<T> embedding;
};

enum class EmbeddingInit { kRandom, kPretrained };

// Non-embedding weights ~ U[-0.05, 0.05], biases 0. Embedding rows come from
// `pretrained` when given, else from the same uniform. The <pad> row is zero.
NetworkParams<float> build_network(const ArchitectureSpec& arch,
                                   std::size_t vocab_size, std::size_t dim,
                                   const Matrix<float>* pretrained,
                                   std::uint64_t seed);

template <typename To, typename From>
NetworkParams<To> params_cast(const NetworkParams<From>& p);

struct LossOptions {
  bool freeze_embeddings = false;
  double weight_decay = 0.0;  // L2 on dense weight matrices, not biases
};

struct LabeledIds {
  std::span<const TokenId> ids;
  std::size_t label = 0;
};

template <typename T>
struct LossAndGrads {
  double loss = 0.0;
  Gradients<T> grads;
};

// Evaluates one parameter set. Holds per-call scratch, so one instance must
// not be shared between threads; create one per worker instead. The
// referenced params must outlive the instance and stay unchanged.
template <typename T>
class NetworkRunner {
 public:
  NetworkRunner(const NetworkParams<T>& params, const ArchitectureSpec& arch);

  std::vector<T> forward(std::span<const TokenId> ids);
  std::size_t predict(std::span<const TokenId> ids);

  // Mean cross-entropy over the batch and its gradient for every tensor.
  LossAndGrads<T> loss_and_grads(std::span<const LabeledIds> batch,
                                 const LossOptions& opts = {});

 private:
  struct LayerCache {
    FeatureMap<T> activation;  // conv output after relu
    PoolResult<T> pool;        // intermediate pool (or max-over-time)
  };

  void run_forward(std::span<const TokenId> ids);
  void accumulate_backward(std::span<const TokenId> ids,
                           std::span<const T> dlogits, Gradients<T>& grads,
                           bool embeddings);

  const NetworkParams<T>& params_;
  const ArchitectureSpec& arch_;
  std::vector<Matrix<T>> conv_wt_;
  FeatureMap<T> sentence_;
  std::vector<LayerCache> cache_;
  std::vector<T> hidden_;
  std::vector<T> logits_;
  std::vector<double> scratch_;
  FeatureMap<T> grad_a_;
  FeatureMap<T> grad_b_;
};

template <typename T>
std::vector<T> forward(const NetworkParams<T>& params,
                       const ArchitectureSpec& arch,
                       std::span<const TokenId> ids);

template <typename T>
std::size_t predict(const NetworkParams<T>& params, const ArchitectureSpec& arch,
                    std::span<const TokenId> ids);

template <typename T>
LossAndGrads<T> loss_and_grads(const NetworkParams<T>& params,
                               const ArchitectureSpec& arch,
                               std::span<const LabeledIds> batch,
                               const LossOptions& opts = {});

// Index of the largest probability; lowest index on ties.
template <typename T>
std::size_t argmax(std::span<const T> probs) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < probs.size(); ++j) {
    if (probs[j] > probs[best]) best = j;
  }
  return best;
}

extern template class NetworkRunner<float>;
extern template class NetworkRunner<double>;

}  // namespace sentcnn

#endif  // SENTCNN_NETWORK_HPP_
