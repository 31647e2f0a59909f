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
#include "sentcnn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "sentcnn/error.hpp"

namespace sentcnn {
namespace {

std::discrete_distribution<std::size_t> zipf(std::size_t n, double s = 1.0) {
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::pow(static_cast<double>(k + 1), -s);
  }
  return {w.begin(), w.end()};
}

std::string filler(std::size_t k) { return "w" + std::to_string(k); }

std::string topic_word(std::size_t k, std::size_t j) {
  return "k" + std::to_string(k) + "t" + std::to_string(j);
}

const std::vector<std::string> kPositiveEmoticons = {":)", ":-)", ":D", "=)"};
const std::vector<std::string> kNegativeEmoticons = {":(", ":-(", ":'(", ";("};

template <typename Rng>
const std::string& pick(const std::vector<std::string>& v, Rng& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

// Fillers of random length with `markers` placed in the first few slots.
template <typename Rng>
TokenSequence marker_line(const std::vector<std::string>& markers,
                          std::size_t length, std::size_t fillers, Rng& rng) {
  auto fz = zipf(fillers);
  TokenSequence out(length);
  for (auto& t : out) t = filler(fz(rng));
  const std::size_t head = std::min<std::size_t>(length, 5);
  std::vector<std::size_t> slots(head);
  for (std::size_t i = 0; i < head; ++i) slots[i] = i;
  std::shuffle(slots.begin(), slots.end(), rng);
  for (std::size_t i = 0; i < markers.size() && i < head; ++i) {
    out[slots[i]] = markers[i];
  }
  return out;
}

void check_lengths(std::size_t lo, std::size_t hi) {
  if (lo == 0 || hi < lo) throw InputError("invalid synthetic line lengths");
}

}  // namespace

std::string positive_marker(std::size_t k) { return "pos" + std::to_string(k); }
std::string negative_marker(std::size_t k) { return "neg" + std::to_string(k); }

std::vector<TokenSequence> two_clique_corpus(const CliqueCorpusConfig& cfg) {
  if (cfg.sentence_length < 2) throw InputError("sentence_length must be >= 2");
  const std::vector<std::vector<std::string>> cliques = {{"a", "b", "c"},
                                                         {"x", "y", "z"}};
  std::mt19937_64 rng(cfg.seed);
  std::vector<TokenSequence> out;
  for (std::size_t i = 0; i < cfg.sentences_per_clique; ++i) {
    for (const auto& clique : cliques) {
      TokenSequence s(cfg.sentence_length);
      for (auto& t : s) t = pick(clique, rng);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<TextExample> marker_corpus(const MarkerCorpusConfig& cfg) {
  check_lengths(cfg.min_length, cfg.max_length);
  if (cfg.markers_per_class == 0 || cfg.fillers == 0) {
    throw InputError("marker corpus needs markers and fillers");
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> len(cfg.min_length, cfg.max_length);
  std::uniform_int_distribution<std::size_t> mk(0, cfg.markers_per_class - 1);
  std::uniform_int_distribution<std::size_t> count(1, 2);
  std::vector<TextExample> out;
  for (std::size_t i = 0; i < cfg.examples; ++i) {
    TextExample ex;
    ex.label = static_cast<Sentiment>(i % kNumClasses);
    std::vector<std::string> markers;
    if (ex.label != Sentiment::kNeutral) {
      const std::size_t c = count(rng);
      for (std::size_t j = 0; j < c; ++j) {
        markers.push_back(ex.label == Sentiment::kPositive ? positive_marker(mk(rng))
                                                           : negative_marker(mk(rng)));
      }
    }
    ex.tokens = marker_line(markers, len(rng), cfg.fillers, rng);
    out.push_back(std::move(ex));
  }
  return out;
}

SyntheticBundle write_synthetic_bundle(const std::filesystem::path& dir,
                                       const SyntheticBundleConfig& cfg) {
  check_lengths(cfg.min_length, cfg.max_length);
  if (cfg.markers_per_class == 0 || cfg.fillers == 0 || cfg.topic_words == 0) {
    throw InputError("bundle needs markers, fillers and topic words");
  }
  std::filesystem::create_directories(dir);
  SyntheticBundle b;
  b.distant = dir / "distant.txt";
  b.train = dir / "train.tsv";
  b.validation = dir / "validation.tsv";
  for (std::size_t k = 0; k < cfg.markers_per_class; ++k) {
    b.positive_markers.push_back(positive_marker(k));
    b.negative_markers.push_back(negative_marker(k));
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(cfg.min_length, cfg.max_length);
  std::uniform_int_distribution<std::size_t> slot(1, 3);
  std::uniform_int_distribution<std::size_t> ctx(0, cfg.topic_words - 1);
  auto mz = zipf(cfg.markers_per_class, cfg.marker_zipf_exponent);
  auto fz = zipf(cfg.fillers);
  // pos_k and neg_k share the topic words of k on one side and have private
  // context words on the other. Polarity is only visible through the label.
  auto bundle_line = [&](Sentiment s) {
    TokenSequence t(len(rng));
    for (auto& w : t) w = filler(fz(rng));
    if (s == Sentiment::kNeutral && u(rng) >= cfg.neutral_topic_rate) return t;
    const std::size_t k = mz(rng);
    const std::size_t at = slot(rng);
    const bool flip = u(rng) < 0.5;
    auto& shared = t[flip ? at - 1 : at + 1];
    auto& own = t[flip ? at + 1 : at - 1];
    shared = topic_word(k, ctx(rng));
    if (s == Sentiment::kNeutral) {
      t[at] = topic_word(k, ctx(rng));
      own = topic_word(k, ctx(rng));
      return t;
    }
    const auto& marker = s == Sentiment::kPositive ? b.positive_markers[k]
                                                   : b.negative_markers[k];
    t[at] = marker;
    own = marker + "c" + std::to_string(ctx(rng));
    return t;
  };

  {
    std::ofstream out(b.distant, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + b.distant.string());
    for (std::size_t i = 0; i < cfg.distant_lines; ++i) {
      Sentiment s = Sentiment::kNeutral;
      if (u(rng) >= cfg.neutral_rate) {
        s = u(rng) < 0.5 ? Sentiment::kNegative : Sentiment::kPositive;
      }
      auto tokens = bundle_line(s);
      const double r = u(rng);
      if (r < cfg.no_emoticon_rate) {
        // no emoticon at all
      } else if (r < cfg.no_emoticon_rate + cfg.mixed_rate) {
        tokens.push_back(pick(kPositiveEmoticons, rng));
        tokens.push_back(pick(kNegativeEmoticons, rng));
      } else {
        bool positive = s == Sentiment::kNeutral ? u(rng) < 0.5
                                                 : s == Sentiment::kPositive;
        if (s != Sentiment::kNeutral && u(rng) >= cfg.emoticon_agreement) {
          positive = !positive;
        }
        tokens.push_back(pick(positive ? kPositiveEmoticons : kNegativeEmoticons, rng));
      }
      out << join_tokens(tokens) << '\n';
    }
  }

  auto write_gold = [&](const std::filesystem::path& path, std::size_t n,
                        const std::string& prefix) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = static_cast<Sentiment>(
          std::uniform_int_distribution<int>(0, kNumClasses - 1)(rng));
      const auto tokens = bundle_line(s);
      out << prefix << i << '\t' << sentiment_name(s) << '\t' << join_tokens(tokens)
          << '\n';
    }
  };
  write_gold(b.train, cfg.gold_train, "t");
  write_gold(b.validation, cfg.gold_validation, "v");
  return b;
}

CorpusMix bundle_mix(const SyntheticBundle& bundle, const std::string& language) {
  CorpusMix mix;
  mix.variant = MixVariant::kSL;
  mix.target_language = language;
  mix.entries = {
      {CorpusKind::kEmbedding, language, bundle.distant, 1.0},
      {CorpusKind::kDistant, language, bundle.distant, 1.0},
      {CorpusKind::kSupervised, language, bundle.train, 1.0},
      {CorpusKind::kValidation, language, bundle.validation, 1.0},
  };
  return mix;
}

PipelineConfig bundle_pipeline_config(const SyntheticBundle& bundle,
                                      std::uint64_t seed) {
  PipelineConfig cfg;
  cfg.mix = bundle_mix(bundle);
  cfg.arch = "L2";
  cfg.n_max = 24;
  cfg.min_count = 1;
  cfg.seed = seed;
  cfg.skipgram.dim = 16;
  cfg.skipgram.subsample = 0.0;
  cfg.skipgram.seed = seed;
  cfg.distant.seed = seed + 1;
  cfg.supervised.seed = seed + 2;
  cfg.distant.batch_size = 32;
  cfg.distant.eval_every = 250;
  return cfg;
}

}  // namespace sentcnn
