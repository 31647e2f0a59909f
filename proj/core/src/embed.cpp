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
#include "sentcnn/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <thread>

#include "sentcnn/error.hpp"
#include "sentcnn/tensor_io.hpp"

namespace sentcnn {
namespace {

bool trainable(TokenId id) { return id != kPadId && id != kUnkId; }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double dot(const float* a, const float* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

}  // namespace

void SkipGramConfig::validate() const {
  if (window < 1) throw InputError("skip-gram window must be >= 1");
  if (dim < 1) throw InputError("embedding dimension must be >= 1");
  if (negatives < 1) throw InputError("skip-gram negatives must be >= 1");
  if (!(subsample >= 0.0)) throw InputError("subsample must be >= 0");
  if (!(lr0 > 0.0)) throw InputError("lr0 must be > 0");
  if (threads < 1) throw InputError("threads must be >= 1");
}

NegativeSampler::NegativeSampler(std::span<const std::uint64_t> counts,
                                 double power)
    : probs_(counts.size(), 0.0) {
  double total = 0.0;
  for (std::size_t id = 0; id < counts.size(); ++id) {
    if (!trainable(static_cast<TokenId>(id))) continue;
    probs_[id] = std::pow(static_cast<double>(counts[id]), power);
    total += probs_[id];
  }
  if (total <= 0.0) throw InputError("no training pairs");
  for (double& p : probs_) p /= total;
  dist_ = std::discrete_distribution<std::uint32_t>(probs_.begin(),
                                                    probs_.end());
}

SkipGramTrainer::SkipGramTrainer(const Vocabulary& vocab, SkipGramConfig cfg,
                                 std::vector<std::vector<TokenId>> corpus)
    : vocab_(vocab),
      cfg_(cfg),
      corpus_(std::move(corpus)),
      sampler_((cfg.validate(), vocab.counts())),
      input_(vocab.size(), cfg.dim),
      output_(vocab.size(), cfg.dim) {
  bool has_pair = false;
  for (auto& seq : corpus_) {
    std::erase_if(seq, [&](TokenId id) {
      if (id >= vocab_.size()) {
        throw InputError("token id outside the vocabulary");
      }
      return !trainable(id);
    });
    total_tokens_ += seq.size();
    has_pair = has_pair || seq.size() >= 2;
  }
  if (!has_pair) throw InputError("no training pairs");

  keep_prob_.assign(vocab_.size(), 1.0);
  if (cfg_.subsample > 0.0) {
    const double threshold = cfg_.subsample * static_cast<double>(total_tokens_);
    for (TokenId id = 0; id < vocab_.size(); ++id) {
      const auto n = static_cast<double>(vocab_.count(id));
      if (n <= 0.0) continue;
      keep_prob_[id] =
          std::min(1.0, (std::sqrt(n / threshold) + 1.0) * threshold / n);
    }
  }

  std::mt19937_64 rng(cfg_.seed);
  const float half = 0.5f / static_cast<float>(cfg_.dim);
  std::uniform_real_distribution<float> init(-half, half);
  for (TokenId id = 0; id < input_.rows(); ++id) {
    for (float& v : input_.row(id)) v = id == kPadId ? 0.0f : init(rng);
  }
}

float SkipGramTrainer::learning_rate(std::uint64_t words_seen) const {
  const double total = static_cast<double>(total_tokens_) * cfg_.epochs + 1.0;
  const double frac = 1.0 - static_cast<double>(words_seen) / total;
  return static_cast<float>(cfg_.lr0 * std::max(frac, 1e-4));
}

void SkipGramTrainer::train_shard(std::size_t begin, std::size_t end,
                                  std::uint64_t seed,
                                  std::uint64_t words_before) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  NegativeSampler sampler = sampler_;
  const std::size_t d = cfg_.dim;
  std::vector<float> grad(d);
  std::vector<TokenId> kept;
  std::uint64_t words_seen = words_before;

  for (std::size_t s = begin; s < end; ++s) {
    kept.clear();
    for (TokenId id : corpus_[s]) {
      if (keep_prob_[id] >= 1.0 || coin(rng) < keep_prob_[id]) {
        kept.push_back(id);
      }
    }
    const float lr = learning_rate(words_seen);
    words_seen += corpus_[s].size();

    for (std::size_t pos = 0; pos < kept.size(); ++pos) {
      float* center = input_.row(kept[pos]).data();
      const std::size_t lo = pos >= cfg_.window ? pos - cfg_.window : 0;
      const std::size_t hi = std::min(kept.size() - 1, pos + cfg_.window);
      for (std::size_t c = lo; c <= hi; ++c) {
        if (c == pos) continue;
        const TokenId context = kept[c];
        std::fill(grad.begin(), grad.end(), 0.0f);
        for (std::uint32_t k = 0; k <= cfg_.negatives; ++k) {
          TokenId target = context;
          double label = 1.0;
          if (k > 0) {
            target = sampler(rng);
            if (target == context) continue;
            label = 0.0;
          }
          float* out = output_.row(target).data();
          const auto g =
              static_cast<float>((label - sigmoid(dot(center, out, d))) * lr);
          for (std::size_t i = 0; i < d; ++i) grad[i] += g * out[i];
          for (std::size_t i = 0; i < d; ++i) out[i] += g * center[i];
        }
        for (std::size_t i = 0; i < d; ++i) center[i] += grad[i];
      }
    }
  }
}

void SkipGramTrainer::run_epoch() {
  const std::uint64_t words_before =
      static_cast<std::uint64_t>(epochs_done_) * total_tokens_;
  const std::uint64_t epoch_seed =
      cfg_.seed ^ (0x9E3779B97F4A7C15ULL * (epochs_done_ + 1));
  if (cfg_.threads <= 1) {
    train_shard(0, corpus_.size(), epoch_seed, words_before);
  } else {
    // Hogwild: shards update the shared tables without locking.
    std::vector<std::thread> workers;
    const std::size_t n = corpus_.size();
    for (unsigned t = 0; t < cfg_.threads; ++t) {
      const std::size_t b = n * t / cfg_.threads;
      const std::size_t e = n * (t + 1) / cfg_.threads;
      workers.emplace_back(&SkipGramTrainer::train_shard, this, b, e,
                           epoch_seed + t, words_before);
    }
    for (auto& w : workers) w.join();
  }
  ++epochs_done_;
}

void SkipGramTrainer::train() {
  while (epochs_done_ < cfg_.epochs) run_epoch();
}

double SkipGramTrainer::pair_loss(
    std::span<const SkipGramPair> pairs,
    const std::vector<std::vector<TokenId>>& negatives) const {
  if (pairs.empty()) return 0.0;
  if (negatives.size() != pairs.size()) {
    throw InputError("one negative list per pair required");
  }
  const std::size_t d = cfg_.dim;
  double total = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const float* v = input_.row(pairs[i].center).data();
    total -= std::log(sigmoid(dot(v, output_.row(pairs[i].context).data(), d)));
    for (TokenId neg : negatives[i]) {
      total -= std::log(sigmoid(-dot(v, output_.row(neg).data(), d)));
    }
  }
  return total / static_cast<double>(pairs.size());
}

EmbeddingTable train_skipgram(const std::vector<std::vector<TokenId>>& corpus,
                              const Vocabulary& vocab,
                              const SkipGramConfig& cfg) {
  SkipGramTrainer trainer(vocab, cfg, corpus);
  trainer.train();
  return trainer.input_vectors();
}

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) throw InputError("cosine: dimension mismatch");
  const double uu = dot(u.data(), u.data(), u.size());
  const double vv = dot(v.data(), v.data(), v.size());
  if (uu <= 0.0 || vv <= 0.0) throw InputError("zero vector");
  const double c = dot(u.data(), v.data(), u.size()) / std::sqrt(uu * vv);
  return std::clamp(c, -1.0, 1.0);
}

void save_embeddings_bin(const std::filesystem::path& path,
                         const EmbeddingTable& table) {
  save_tensor(path, table);
}

EmbeddingTable load_embeddings_bin(const std::filesystem::path& path) {
  return load_tensor(path);
}

void write_embeddings_text(std::ostream& out, const EmbeddingTable& table,
                           const Vocabulary& vocab) {
  if (table.rows() != vocab.size()) {
    throw InputError("embedding rows do not match vocabulary size");
  }
  out << table.rows() << ' ' << table.cols() << '\n';
  char buf[32];
  for (TokenId id = 0; id < table.rows(); ++id) {
    out << vocab.token(id);
    for (float v : table.row(id)) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace sentcnn
