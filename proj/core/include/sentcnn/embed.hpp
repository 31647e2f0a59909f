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
#ifndef SENTCNN_EMBED_HPP_
#define SENTCNN_EMBED_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "sentcnn/tensor.hpp"
#include "sentcnn/vocab.hpp"

namespace sentcnn {

// V x d table; row i is the vector of token id i.
using EmbeddingTable = Matrix<float>;

struct SkipGramConfig {
  std::uint32_t window = 5;
  std::uint32_t dim = 52;
  std::uint32_t negatives = 5;
  double subsample = 1e-5;  // 0 disables frequent-word subsampling
  std::uint32_t epochs = 3;
  double lr0 = 0.025;
  std::uint64_t seed = 1;
  // > 1 shards sentences across threads with unsynchronized (Hogwild-style)
  // table updates. Results are then not reproducible.
  unsigned threads = 1;

  void validate() const;
};

// Draws token ids from the unigram distribution raised to `power`. Reserved
// ids (<pad>, <unk>) have zero probability.
class NegativeSampler {
 public:
  explicit NegativeSampler(std::span<const std::uint64_t> counts,
                           double power = 0.75);

  template <typename Rng>
  TokenId operator()(Rng& rng) const {
    return static_cast<TokenId>(dist_(rng));
  }
  double probability(TokenId id) const { return probs_.at(id); }

 private:
  std::vector<double> probs_;
  mutable std::discrete_distribution<std::uint32_t> dist_;
};

struct SkipGramPair {
  TokenId center;
  TokenId context;
};

// Skip-gram with negative sampling. For every (center, context) pair inside
// the window it ascends log s(u_ctx . v_cen) + sum_k log s(-u_neg . v_cen),
// where v are input vectors and u output vectors. The learning rate decays
// linearly from lr0 to lr0 * 1e-4 over all epochs.
class SkipGramTrainer {
 public:
  // `corpus` holds id sequences in the vocabulary's id space; <pad> and <unk>
  // positions are dropped before windowing.
  SkipGramTrainer(const Vocabulary& vocab, SkipGramConfig cfg,
                  std::vector<std::vector<TokenId>> corpus);

  void run_epoch();
  void train();  // runs the remaining configured epochs

  std::uint32_t epochs_done() const { return epochs_done_; }
  const EmbeddingTable& input_vectors() const { return input_; }
  const EmbeddingTable& output_vectors() const { return output_; }
  std::uint64_t trainable_tokens() const { return total_tokens_; }

  // Mean negative-sampling loss over fixed pairs; negatives[i] are the noise
  // ids used for pair i.
  double pair_loss(std::span<const SkipGramPair> pairs,
                   const std::vector<std::vector<TokenId>>& negatives) const;

 private:
  void train_shard(std::size_t begin, std::size_t end, std::uint64_t seed,
                   std::uint64_t words_before);
  float learning_rate(std::uint64_t words_seen) const;

  const Vocabulary& vocab_;
  SkipGramConfig cfg_;
  std::vector<std::vector<TokenId>> corpus_;
  NegativeSampler sampler_;
  std::vector<double> keep_prob_;
  EmbeddingTable input_;
  EmbeddingTable output_;
  std::uint64_t total_tokens_ = 0;
  std::uint32_t epochs_done_ = 0;
};

EmbeddingTable train_skipgram(const std::vector<std::vector<TokenId>>& corpus,
                              const Vocabulary& vocab,
                              const SkipGramConfig& cfg);

// u.v / (|u||v|); throws on a zero-norm input.
double cosine(std::span<const float> u, std::span<const float> v);

// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues are sorted descending; column j of `vectors` belongs to
// values[j].
struct SymmetricEigen {
  std::vector<double> values;
  Matrix<double> vectors;
  int sweeps = 0;
};
SymmetricEigen jacobi_eigen(Matrix<double> a, double tol = 1e-10,
                            int max_sweeps = 100);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Projection2d {
  std::vector<Point2> points;
  std::vector<double> axis1;  // unit eigenvector, largest eigenvalue
  std::vector<double> axis2;
  double variance1 = 0.0;
  double variance2 = 0.0;
};

// Mean-centers the selected rows and projects them on the top two principal
// axes. Each axis is oriented so its largest-magnitude entry is >= 0.
Projection2d pca_project_2d(const EmbeddingTable& table,
                            std::span<const TokenId> ids);

// embeddings.bin uses the tensor layout of tensor_io.hpp. The text export is
// "V d" followed by one "token v_1 ... v_d" line per id.
void save_embeddings_bin(const std::filesystem::path& path,
                         const EmbeddingTable& table);
EmbeddingTable load_embeddings_bin(const std::filesystem::path& path);
void write_embeddings_text(std::ostream& out, const EmbeddingTable& table,
                           const Vocabulary& vocab);

}  // namespace sentcnn

#endif  // SENTCNN_EMBED_HPP_
