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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "sentcnn/error.hpp"
#include "sentcnn/synthetic.hpp"

namespace sentcnn {
namespace {

struct Encoded {
  Vocabulary vocab;
  std::vector<std::vector<TokenId>> ids;
};

Encoded encode_corpus(const std::vector<TokenSequence>& corpus) {
  auto vocab = Vocabulary::build(corpus, 1);
  std::vector<std::vector<TokenId>> ids;
  for (const auto& s : corpus) {
    std::vector<TokenId> row;
    for (const auto& t : s) row.push_back(vocab.id_or_unk(t));
    ids.push_back(std::move(row));
  }
  return {std::move(vocab), std::move(ids)};
}

SkipGramConfig clique_config() {
  SkipGramConfig cfg;
  cfg.dim = 16;
  cfg.window = 3;
  cfg.subsample = 0.0;
  cfg.epochs = 3;
  cfg.seed = 5;
  return cfg;
}

double row_cosine(const EmbeddingTable& t, const Vocabulary& v,
                  const std::string& a, const std::string& b) {
  return cosine(t.row(*v.find(a)), t.row(*v.find(b)));
}

TEST(SkipGram, CliquesSeparate) {
  CliqueCorpusConfig cc;
  cc.seed = 11;
  const auto enc = encode_corpus(two_clique_corpus(cc));
  const auto table = train_skipgram(enc.ids, enc.vocab, clique_config());
  const std::vector<std::string> c1 = {"a", "b", "c"};
  const std::vector<std::string> c2 = {"x", "y", "z"};
  double within = 0.0;
  int nw = 0;
  for (const auto* c : {&c1, &c2}) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        within += row_cosine(table, enc.vocab, (*c)[i], (*c)[j]);
        ++nw;
      }
    }
  }
  double cross = 0.0;
  for (const auto& a : c1) {
    for (const auto& b : c2) cross += row_cosine(table, enc.vocab, a, b);
  }
  EXPECT_GE(within / nw - cross / 9.0, 0.3);
}

TEST(SkipGram, DeterministicSingleThread) {
  const auto enc = encode_corpus(two_clique_corpus({}));
  const auto a = train_skipgram(enc.ids, enc.vocab, clique_config());
  const auto b = train_skipgram(enc.ids, enc.vocab, clique_config());
  EXPECT_EQ(a, b);
  auto other = clique_config();
  other.seed = 6;
  EXPECT_NE(train_skipgram(enc.ids, enc.vocab, other), a);
}

TEST(SkipGram, ZeroEpochsReturnsInitAndPadIsZero) {
  const auto enc = encode_corpus(two_clique_corpus({}));
  auto cfg = clique_config();
  cfg.epochs = 0;
  const auto table = train_skipgram(enc.ids, enc.vocab, cfg);
  SkipGramTrainer fresh(enc.vocab, cfg, enc.ids);
  EXPECT_EQ(table, fresh.input_vectors());
  const float half = 0.5f / static_cast<float>(cfg.dim);
  for (TokenId id = 0; id < table.rows(); ++id) {
    for (float v : table.row(id)) {
      if (id == kPadId) {
        EXPECT_EQ(v, 0.0f);
      } else {
        EXPECT_LE(std::abs(v), half);
      }
    }
  }
}

TEST(SkipGram, HeldOutPairLossDoesNotRise) {
  CliqueCorpusConfig cc;
  cc.seed = 2;
  const auto enc = encode_corpus(two_clique_corpus(cc));
  cc.seed = 3;
  cc.sentences_per_clique = 20;
  const auto held = encode_corpus(two_clique_corpus(cc));
  std::vector<SkipGramPair> pairs;
  for (const auto& s : held.ids) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      // Re-map through tokens; both vocabularies share the same six words.
      pairs.push_back({*enc.vocab.find(held.vocab.token(s[i])),
                       *enc.vocab.find(held.vocab.token(s[i + 1]))});
    }
  }
  NegativeSampler sampler(enc.vocab.counts());
  std::mt19937_64 rng(8);
  std::vector<std::vector<TokenId>> negatives(pairs.size());
  for (auto& n : negatives) {
    for (int k = 0; k < 5; ++k) n.push_back(sampler(rng));
  }
  auto cfg = clique_config();
  cfg.epochs = 5;
  SkipGramTrainer trainer(enc.vocab, cfg, enc.ids);
  double prev = trainer.pair_loss(pairs, negatives);
  const double initial = prev;
  for (int e = 0; e < 5; ++e) {
    trainer.run_epoch();
    const double now = trainer.pair_loss(pairs, negatives);
    EXPECT_LE(now, prev * 1.05) << "epoch " << e + 1;
    prev = now;
  }
  EXPECT_LT(prev, initial);
}

TEST(NegativeSampler, MatchesUnigramPower) {
  std::vector<std::uint64_t> counts = {0, 0, 100, 50, 40, 30, 20, 10, 5, 1};
  NegativeSampler sampler(counts);
  double total = 0.0;
  for (std::size_t i = 2; i < counts.size(); ++i) {
    total += std::pow(static_cast<double>(counts[i]), 0.75);
  }
  std::vector<std::uint64_t> hits(counts.size(), 0);
  std::mt19937_64 rng(1);
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) ++hits[sampler(rng)];
  EXPECT_EQ(hits[kPadId], 0u);
  EXPECT_EQ(hits[kUnkId], 0u);
  for (std::size_t i = 2; i < counts.size(); ++i) {
    const double expected = std::pow(static_cast<double>(counts[i]), 0.75) / total;
    EXPECT_NEAR(sampler.probability(static_cast<TokenId>(i)), expected, 1e-12);
    const double observed = static_cast<double>(hits[i]) / draws;
    EXPECT_NEAR(observed, expected, 0.02 * expected) << "id " << i;
  }
}

TEST(SkipGram, Errors) {
  const auto vocab = Vocabulary::build(std::vector<TokenSequence>{{"a", "b"}}, 1);
  SkipGramConfig cfg;
  auto make = [&](std::vector<std::vector<TokenId>> ids) {
    SkipGramTrainer t(vocab, cfg, std::move(ids));
  };
  // One token per sentence leaves no pairs.
  EXPECT_THROW(make({{2}, {3}}), InputError);
  EXPECT_THROW(make({{2, 1, 0}}), InputError);
  EXPECT_THROW(make({{2, 99}}), InputError);
  cfg.dim = 0;
  EXPECT_THROW(make({{2, 3}}), InputError);
}

TEST(Cosine, Examples) {
  const std::vector<float> u = {1, 0};
  const std::vector<float> v = {0, 1};
  const std::vector<float> w = {2, 0};
  const std::vector<float> z = {0, 0};
  const std::vector<float> neg = {-3, 0};
  const std::vector<float> a = {1, 2};
  const std::vector<float> diag = {1, 1};
  EXPECT_NEAR(cosine(a, a), 1.0, 1e-12);
  EXPECT_NEAR(cosine(u, diag), 0.70710678, 1e-8);
  EXPECT_NEAR(cosine(u, v), 0.0, 1e-12);
  EXPECT_NEAR(cosine(u, w), 1.0, 1e-12);
  EXPECT_NEAR(cosine(u, neg), -1.0, 1e-12);
  EXPECT_THROW(cosine(u, z), InputError);
}

TEST(EmbeddingIo, BinaryRoundTripAndText) {
  const auto vocab = Vocabulary::build(std::vector<TokenSequence>{{"a", "b"}}, 1);
  EmbeddingTable t(vocab.size(), 2);
  t(2, 0) = 0.5f;
  t(3, 1) = -1.25f;
  const auto path = std::filesystem::temp_directory_path() / "sentcnn_emb.bin";
  save_embeddings_bin(path, t);
  EXPECT_EQ(load_embeddings_bin(path), t);
  std::ostringstream text;
  write_embeddings_text(text, t, vocab);
  EXPECT_EQ(text.str(), "4 2\n<pad> 0 0\n<unk> 0 0\na 0.5 0\nb 0 -1.25\n");
  EmbeddingTable wrong(3, 2);
  EXPECT_THROW(write_embeddings_text(text, wrong, vocab), InputError);
}

}  // namespace
}  // namespace sentcnn
