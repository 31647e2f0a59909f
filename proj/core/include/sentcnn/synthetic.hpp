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

// Generators for small synthetic corpora used by tests, benchmarks and the
// acceptance checks.

#ifndef SENTCNN_SYNTHETIC_HPP_
#define SENTCNN_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sentcnn/pipeline.hpp"
#include "sentcnn/textprep.hpp"

namespace sentcnn {

// Two disjoint cliques {a,b,c} and {x,y,z}; every sentence draws its tokens
// from one clique only.
struct CliqueCorpusConfig {
  std::size_t sentences_per_clique = 500;
  std::size_t sentence_length = 6;
  std::uint64_t seed = 1;
};
std::vector<TokenSequence> two_clique_corpus(const CliqueCorpusConfig& cfg);

// Balanced 3-class corpus. Positive examples contain pos* markers, negative
// ones neg* markers, neutral ones only fillers.
struct MarkerCorpusConfig {
  std::size_t examples = 200;
  std::size_t markers_per_class = 5;
  std::size_t fillers = 50;
  std::size_t min_length = 6;
  std::size_t max_length = 12;
  std::uint64_t seed = 1;
};
std::vector<TextExample> marker_corpus(const MarkerCorpusConfig& cfg);

std::string positive_marker(std::size_t k);
std::string negative_marker(std::size_t k);

// Distant, gold-train and gold-validation files on disk. Marker k of either
// polarity is flanked by a topic word of k and by a private word of its own,
// so skip-gram puts pos_k near neg_k without a shared polarity direction.
// Markers follow a Zipf law: the gold training set sees mostly the frequent
// ones while the distant corpus covers all of them. Markers sit near
// the start of a line and emoticons at its end, outside the skip-gram window.
struct SyntheticBundleConfig {
  std::size_t distant_lines = 50000;
  std::size_t gold_train = 300;
  std::size_t gold_validation = 1000;
  std::size_t markers_per_class = 30;
  double marker_zipf_exponent = 1.0;
  std::size_t fillers = 400;
  std::size_t topic_words = 3;     // per marker index
  double neutral_topic_rate = 0.5;  // neutral lines that still carry topic words
  std::size_t min_length = 12;
  std::size_t max_length = 20;
  double emoticon_agreement = 0.85;
  double neutral_rate = 0.2;     // distant lines without markers
  double no_emoticon_rate = 0.05;
  double mixed_rate = 0.03;
  std::uint64_t seed = 7;
};

struct SyntheticBundle {
  std::filesystem::path distant;
  std::filesystem::path train;
  std::filesystem::path validation;
  std::vector<std::string> positive_markers;
  std::vector<std::string> negative_markers;
};

SyntheticBundle write_synthetic_bundle(const std::filesystem::path& dir,
                                       const SyntheticBundleConfig& cfg);

// SL mix over a bundle: the distant file doubles as the embedding corpus.
CorpusMix bundle_mix(const SyntheticBundle& bundle,
                     const std::string& language = "en");

// Pipeline settings sized for the bundle: L2, d=16, n_max=24, min_count=1,
// distant batches of 32.
PipelineConfig bundle_pipeline_config(const SyntheticBundle& bundle,
                                      std::uint64_t seed);

}  // namespace sentcnn

#endif  // SENTCNN_SYNTHETIC_HPP_
