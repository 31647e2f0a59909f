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
#include <benchmark/benchmark.h>

#include <random>

#include "sentcnn/embed.hpp"
#include "sentcnn/network.hpp"
#include "sentcnn/nncore.hpp"
#include "sentcnn/optim.hpp"
#include "sentcnn/synthetic.hpp"

namespace sentcnn {
namespace {

Matrix<float> random_map(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  Matrix<float> m(rows, cols);
  for (auto& v : m.flat()) v = u(rng);
  return m;
}

// First L2 layer at full size: 60 x 52 input, 200 filters of width 4.
void BM_Conv1dForward(benchmark::State& state) {
  const auto in = random_map(60, 52, 1);
  FilterBank<float> fb(200, 4, 52);
  fb.weights = random_map(200, 4 * 52, 2);
  const auto wt = transpose(fb.weights);
  FeatureMap<float> out;
  std::vector<double> acc;
  for (auto _ : state) {
    conv1d_forward(in, fb, wt, out, acc);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Conv1dForward);

void BM_Conv1dBackward(benchmark::State& state) {
  const auto in = random_map(60, 52, 1);
  FilterBank<float> fb(200, 4, 52);
  fb.weights = random_map(200, 4 * 52, 2);
  const auto d_out = random_map(57, 200, 3);
  Matrix<float> dw(200, 4 * 52);
  std::vector<float> db(200);
  FeatureMap<float> d_in;
  std::vector<double> scratch;
  for (auto _ : state) {
    conv1d_backward_accumulate(in, fb, d_out, dw, db, &d_in, scratch);
    benchmark::DoNotOptimize(d_in.data());
  }
}
BENCHMARK(BM_Conv1dBackward);

// One example through L2 (d=52, n_max=60); argument 0 = forward only,
// 1 = loss and gradients.
void BM_NetworkStep(benchmark::State& state) {
  const auto arch = ArchitectureSpec::preset("L2", 60);
  const auto params = build_network(arch, 5000, 52, nullptr, 1);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<TokenId> tok(2, 4999);
  std::vector<TokenId> ids(60, kPadId);
  for (std::size_t i = 0; i < 20; ++i) ids[i] = tok(rng);
  const std::vector<LabeledIds> batch = {{ids, 2}};
  NetworkRunner<float> runner(params, arch);
  for (auto _ : state) {
    if (state.range(0) == 0) {
      benchmark::DoNotOptimize(runner.forward(ids));
    } else {
      benchmark::DoNotOptimize(runner.loss_and_grads(batch).loss);
    }
  }
}
BENCHMARK(BM_NetworkStep)->Arg(0)->Arg(1);

void BM_AdaDeltaStep(benchmark::State& state) {
  const auto arch = ArchitectureSpec::preset("L2", 60);
  auto params = build_network(arch, 5000, 52, nullptr, 1);
  AdaDeltaState opt(params);
  Gradients<float> grads;
  static_cast<LayerParams<float>&>(grads) = params;
  for (std::size_t r = 2; r < 22; ++r) grads.embedding[static_cast<TokenId>(r)].assign(52, 0.01f);
  for (auto _ : state) opt.step(params, grads);
}
BENCHMARK(BM_AdaDeltaStep);

void BM_SkipGramEpoch(benchmark::State& state) {
  CliqueCorpusConfig cc;
  cc.sentences_per_clique = 2000;
  cc.sentence_length = 12;
  const auto text = two_clique_corpus(cc);
  const auto vocab = Vocabulary::build(text, 1);
  std::vector<std::vector<TokenId>> corpus;
  for (const auto& s : text) {
    std::vector<TokenId> ids;
    for (const auto& t : s) ids.push_back(vocab.id_or_unk(t));
    corpus.push_back(std::move(ids));
  }
  SkipGramConfig cfg;
  cfg.epochs = 1;
  cfg.subsample = 0.0;
  for (auto _ : state) {
    SkipGramTrainer trainer(vocab, cfg, corpus);
    trainer.run_epoch();
    benchmark::DoNotOptimize(trainer.input_vectors().data());
  }
  state.SetItemsProcessed(state.iterations() * 4000 * 12);
}
BENCHMARK(BM_SkipGramEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sentcnn

BENCHMARK_MAIN();
