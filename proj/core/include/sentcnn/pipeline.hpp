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
#ifndef SENTCNN_PIPELINE_HPP_
#define SENTCNN_PIPELINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sentcnn/config.hpp"
#include "sentcnn/embed.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/metrics.hpp"
#include "sentcnn/network.hpp"
#include "sentcnn/optim.hpp"
#include "sentcnn/textprep.hpp"
#include "sentcnn/vocab.hpp"

namespace sentcnn {

// Encoded training example.
struct LabeledExample {
  std::vector<TokenId> ids;  // length n_max
  Sentiment label = Sentiment::kNeutral;
  bool weak = false;
  std::string language;
};

// Tokenized example before encoding.
struct TextExample {
  TokenSequence tokens;
  Sentiment label = Sentiment::kNeutral;
  bool weak = false;
  std::string language;
};

enum class Phase { kDistant, kSupervised };
std::string_view phase_name(Phase p);

struct PhaseConfig {
  Phase phase = Phase::kSupervised;
  std::uint32_t epochs = 20;
  std::size_t batch_size = 32;
  std::size_t eval_every = 0;  // batches; 0 = only at epoch ends
  bool freeze_embeddings = false;
  bool balance = false;  // down-sample the majority weak class
  std::uint64_t seed = 1;
  double weight_decay = 0.0;

  // One epoch, batches of 128, evaluation every 1000 batches.
  static PhaseConfig distant_defaults();
  // Twenty epochs, batches of 32, evaluation at every epoch end.
  static PhaseConfig supervised_defaults();
};

struct HistoryPoint {
  Phase phase = Phase::kSupervised;
  std::uint64_t step = 0;  // batches completed in this phase
  double score = 0.0;      // validation F1(pos,neg)
};

struct PhaseResult {
  NetworkParams<float> best;
  std::optional<AdaDeltaState> best_optimizer;  // state at the best snapshot
  std::vector<HistoryPoint> history;
  double best_score = 0.0;
  std::uint64_t best_step = 0;
};

using ProgressFn = std::function<void(std::string_view)>;

// Uniform random split without replacement. The validation side gets
// round(fraction * size) items; both sides must be non-empty.
template <typename Example>
std::pair<std::vector<Example>, std::vector<Example>> split_validation(
    std::vector<Example> data, double fraction, std::uint64_t seed) {
  if (data.size() < 2) throw InputError("need at least 2 examples to split");
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InputError("validation fraction must be in (0, 1)");
  }
  const auto n_val = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(data.size())));
  if (n_val == 0 || n_val >= data.size()) {
    throw InputError("validation fraction leaves one side of the split empty");
  }
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> is_val(data.size(), false);
  for (std::size_t i = 0; i < n_val; ++i) is_val[order[i]] = true;
  std::vector<Example> train;
  std::vector<Example> val;
  train.reserve(data.size() - n_val);
  val.reserve(n_val);
  // Keep input order within each side.
  for (std::size_t i = 0; i < data.size(); ++i) {
    (is_val[i] ? val : train).push_back(std::move(data[i]));
  }
  return {std::move(train), std::move(val)};
}

// Batch order for one epoch: a permutation derived from (seed, epoch).
std::vector<std::size_t> epoch_permutation(std::size_t n, std::uint64_t seed,
                                           std::uint32_t epoch);

ConfusionMatrix evaluate(const NetworkParams<float>& params,
                         const ArchitectureSpec& arch,
                         std::span<const LabeledExample> data);

// Trains with AdaDelta over shuffled mini-batches, scoring F1(pos,neg) on
// `validation` every eval_every batches and at each epoch end, and returns
// the best-scoring snapshot (earliest on ties).
PhaseResult run_phase(const NetworkParams<float>& params,
                      const ArchitectureSpec& arch,
                      std::span<const LabeledExample> data,
                      const PhaseConfig& cfg,
                      std::span<const LabeledExample> validation,
                      const ProgressFn& progress = {});

// ---------------------------------------------------------------------------
// Corpus mixing and the three-phase procedure.

enum class CorpusKind { kEmbedding, kDistant, kSupervised, kValidation };
std::string_view corpus_kind_name(CorpusKind k);

// Embedding and distant corpora hold one raw tweet per line; supervised and
// validation corpora are `id<TAB>label<TAB>text` with label in {negative,
// neutral, positive}. `weight` in (0, 1] keeps that leading fraction of the
// file's examples.
struct CorpusEntry {
  CorpusKind kind = CorpusKind::kSupervised;
  std::string language;
  std::filesystem::path path;
  double weight = 1.0;
};

// SL: one language throughout. ML: distant (and embedding) corpora of all
// languages, gold data of target_language only. FML: every corpus in every
// phase.
enum class MixVariant { kSL, kML, kFML };
std::string_view variant_name(MixVariant v);

struct CorpusMix {
  MixVariant variant = MixVariant::kSL;
  std::string target_language;
  std::vector<CorpusEntry> entries;

  // Entries of `kind` that take part under this variant.
  std::vector<CorpusEntry> select(CorpusKind kind) const;
  void validate() const;
};

std::vector<TokenSequence> read_raw_corpus(const std::filesystem::path& path,
                                           double weight = 1.0);
// Weak-labeled distant examples; lines without a usable label are dropped.
std::vector<TextExample> read_distant_corpus(const std::filesystem::path& path,
                                             const std::string& language,
                                             double weight = 1.0);
std::vector<TextExample> read_supervised_tsv(const std::filesystem::path& path,
                                             const std::string& language,
                                             double weight = 1.0);

struct PhaseData {
  std::vector<TokenSequence> embedding_text;
  std::vector<TextExample> distant;
  std::vector<TextExample> supervised;
  std::vector<TextExample> validation;
};

// Loads the corpora selected by the mix. Without validation corpora the
// supervised data is split by `validation_fraction`.
PhaseData load_phase_data(const CorpusMix& mix, double validation_fraction,
                          std::uint64_t seed);

std::vector<LabeledExample> encode_examples(const std::vector<TextExample>& in,
                                            const Vocabulary& vocab,
                                            std::size_t n_max);

struct PipelineConfig {
  CorpusMix mix;
  std::string arch = "L2";
  std::size_t filters = 0;  // 0 keeps the preset's filter counts
  std::size_t n_max = 60;
  std::uint64_t min_count = 15;
  EmbeddingInit init = EmbeddingInit::kPretrained;
  SkipGramConfig skipgram;
  PhaseConfig distant = PhaseConfig::distant_defaults();
  PhaseConfig supervised = PhaseConfig::supervised_defaults();
  double validation_fraction = 0.1;
  std::uint64_t seed = 1;

  ArchitectureSpec architecture() const;

  // Defaults overridden by `cfg`; unknown keys are rejected.
  static PipelineConfig from_config(const KeyValueConfig& cfg);
  // Every resolved key, suitable for feeding back into from_config.
  KeyValueConfig to_config() const;
};

// Documented config keys (see README).
const std::vector<std::string>& pipeline_config_keys();

struct PhaseTiming {
  std::string phase;
  double seconds = 0.0;
};

struct PipelineResult {
  ArchitectureSpec arch;
  std::optional<Vocabulary> vocab;
  std::optional<EmbeddingTable> skipgram_embeddings;  // phase i output
  std::optional<NetworkParams<float>> after_distant;  // phase ii best
  NetworkParams<float> final_params;                  // phase iii best
  std::vector<HistoryPoint> history;
  std::optional<double> distant_best;
  std::optional<double> supervised_best;
  std::vector<PhaseTiming> timings;
};

// Phase i trains skip-gram embeddings (pretrained init only), phase ii runs
// distant supervision on weak labels, phase iii fine-tunes on gold data.
// Any phase is skipped when its epoch count is 0. When `out_dir` is non-empty
// it receives:
//   run_manifest.txt   resolved config plus run.* bookkeeping keys
//   vocab.tsv, embeddings.bin, embeddings.txt
//   distant_model/     phase ii best checkpoint
//   model/             final checkpoint
//   history.tsv        step<TAB>phase<TAB>val_f1
PipelineResult run_three_phase(const PipelineConfig& cfg,
                               const std::filesystem::path& out_dir = {},
                               const ProgressFn& progress = {});

void write_history_tsv(std::ostream& out, std::span<const HistoryPoint> history);

std::string_view tool_version();

}  // namespace sentcnn

#endif  // SENTCNN_PIPELINE_HPP_
