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
// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grad_suite.hpp"
#include "oracles.hpp"
#include "scenarios.hpp"
#include "sentcnn/embed.hpp"
#include "sentcnn/metrics.hpp"
#include "sentcnn/model_io.hpp"
#include "sentcnn/network.hpp"
#include "sentcnn/nncore.hpp"
#include "sentcnn/optim.hpp"
#include "sentcnn/pipeline.hpp"
#include "sentcnn/synthetic.hpp"

namespace sentcnn {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

void log(const std::string& msg) { std::cerr << "[acceptance] " << msg << std::endl; }

// ---------------------------------------------------------------------------

Verdict gradient_suite() {
  const auto t0 = Clock::now();
  std::map<std::string, double> worst;
  const auto small = testing::small_check_arch();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto track = [&](const std::string& k, double e) {
      worst[k] = std::max(worst[k], e);
    };
    track("conv1d", testing::conv1d_grad_error(seed));
    track("maxpool", testing::maxpool_grad_error(seed));
    track("relu", testing::relu_grad_error(seed));
    track("softmax_xent", testing::softmax_grad_error(seed));
    track("hidden", testing::hidden_grad_error(seed));
    track("loss_and_grads", testing::network_grad_error(small, 6, seed));
  }
  const double secs = since(t0);
  Verdict v;
  v.pass = secs < 30.0;
  std::ostringstream d;
  for (const auto& [k, e] : worst) {
    v.pass = v.pass && e < 1e-4;
    d << k << "=" << fmt("%.2e", e) << " ";
  }
  d << "(" << fmt("%.1f", secs) << " s)";
  v.detail = d.str();
  return v;
}

Verdict shape_suite() {
  std::size_t checked = 0;
  bool ok = true;
  for (std::size_t n = 1; n <= 50; ++n) {
    for (std::size_t h = 1; h <= n; ++h) {
      ok = ok && conv_output_length(n, h) == n - h + 1;
      FilterBank<float> fb(1, h, 1);
      ok = ok && conv1d(Matrix<float>(n, 1), fb).rows() == n - h + 1;
      ++checked;
    }
  }
  for (std::size_t len = 1; len <= 50; ++len) {
    for (std::size_t w = 1; w <= len; ++w) {
      for (std::size_t st = 1; st <= 50; ++st) {
        ok = ok && pool_output_length(len, w, st) == (len - w) / st + 1;
        ok = ok && maxpool(Matrix<float>(len, 1), w, st).out.rows() == (len - w) / st + 1;
        ++checked;
      }
    }
  }
  const auto walk = ArchitectureSpec::preset("L2", 60).shape_walk();
  const bool walk_ok = walk == std::vector<std::size_t>{60, 57, 27, 25, 1};
  std::ostringstream d;
  d << checked << " shape cases; L2 walk";
  for (auto s : walk) d << " " << s;
  return {ok && walk_ok, d.str()};
}

Verdict metric_oracle() {
  auto cm_of = [](const std::vector<std::vector<int>>& rows) {
    ConfusionMatrix cm;
    for (std::size_t g = 0; g < 3; ++g) {
      for (std::size_t p = 0; p < 3; ++p) cm.at(g, p) = rows[g][p];
    }
    return cm;
  };
  const double hand = f1_pn(cm_of({{3, 1, 1}, {1, 2, 0}, {0, 1, 4}}));
  const double perfect = f1_pn(cm_of({{4, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
  const double neutral = f1_pn(cm_of({{0, 4, 0}, {0, 2, 0}, {0, 3, 0}}));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> count(0, 30);
  bool fuzz_ok = true;
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::vector<int>> rows(3, std::vector<int>(3));
    for (auto& r : rows) {
      for (auto& c : r) c = count(rng);
    }
    const double s = f1_pn(cm_of(rows));
    fuzz_ok = fuzz_ok && s >= 0.0 && s <= 1.0;
  }
  const bool pass = std::abs(hand - 0.7333) <= 1e-4 && perfect == 1.0 &&
                    neutral == 0.0 && fuzz_ok;
  return {pass, "hand=" + fmt("%.6f", hand) + " perfect=" + fmt("%.1f", perfect) +
                    " all_neutral=" + fmt("%.1f", neutral) +
                    (fuzz_ok ? " fuzz 10000 in [0,1]" : " fuzz out of range")};
}

Verdict overfit() {
  const auto out = testing::run_marker_overfit(1);
  return {out.best_f1 >= 0.95 && out.seconds < 120.0,
          "best val F1=" + fmt("%.4f", out.best_f1) + " at step " +
              std::to_string(out.best_step) + " (" + fmt("%.1f", out.seconds) + " s)"};
}

// ---------------------------------------------------------------------------
// Synthetic bundle runs shared by the distant-supervision and geometry
// criteria.

struct BundleRun {
  double supervised_f1 = 0.0;
  double cos_skipgram = 0.0;
  double cos_distant = 0.0;
};

double marker_cosine(const EmbeddingTable& table, const Vocabulary& vocab) {
  return cosine(table.row(*vocab.find(positive_marker(0))),
                table.row(*vocab.find(negative_marker(0))));
}

struct DistantStudy {
  std::vector<BundleRun> with;
  std::vector<double> without;
  double seconds = 0.0;
};

DistantStudy distant_study(const fs::path& root) {
  const auto t0 = Clock::now();
  SyntheticBundleConfig bc;
  bc.distant_lines = 50000;
  const auto bundle = write_synthetic_bundle(root / "bundle50k", bc);
  DistantStudy s;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto cfg = bundle_pipeline_config(bundle, seed);
    const auto r = run_three_phase(cfg);
    BundleRun b;
    b.supervised_f1 = *r.supervised_best;
    b.cos_skipgram = marker_cosine(*r.skipgram_embeddings, *r.vocab);
    b.cos_distant = marker_cosine(r.after_distant->embedding, *r.vocab);
    s.with.push_back(b);
    cfg.distant.epochs = 0;
    const auto n = run_three_phase(cfg);
    s.without.push_back(*n.supervised_best);
    log("seed " + std::to_string(seed) + ": distant " + fmt("%.4f", b.supervised_f1) +
        ", no distant " + fmt("%.4f", s.without.back()) + ", cos " +
        fmt("%.3f", b.cos_skipgram) + " -> " + fmt("%.3f", b.cos_distant));
  }
  s.seconds = since(t0);
  return s;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

Verdict distant_direction(const DistantStudy& s) {
  std::vector<double> with;
  for (const auto& r : s.with) with.push_back(r.supervised_f1);
  const double gain = mean(with) - mean(s.without);
  return {gain >= 0.02 && s.seconds < 900.0,
          "mean F1 with distant " + fmt("%.4f", mean(with)) + ", without " +
              fmt("%.4f", mean(s.without)) + ", gain " + fmt("%+.2f", 100 * gain) +
              " points (" + fmt("%.0f", s.seconds) + " s)"};
}

Verdict geometry_direction(const DistantStudy& s) {
  std::vector<double> before;
  std::vector<double> after;
  std::ostringstream per_seed;
  for (const auto& r : s.with) {
    before.push_back(r.cos_skipgram);
    after.push_back(r.cos_distant);
    per_seed << " " << fmt("%.3f", r.cos_skipgram) << "->" << fmt("%.3f", r.cos_distant);
  }
  return {mean(after) < mean(before),
          "cos(" + positive_marker(0) + "," + negative_marker(0) + ") mean " +
              fmt("%.4f", mean(before)) + " -> " + fmt("%.4f", mean(after)) +
              "; per seed" + per_seed.str()};
}

// ---------------------------------------------------------------------------

Verdict clique() {
  CliqueCorpusConfig cc;
  const auto corpus = two_clique_corpus(cc);
  const auto vocab = Vocabulary::build(corpus, 1);
  std::vector<std::vector<TokenId>> ids;
  for (const auto& s : corpus) {
    std::vector<TokenId> row;
    for (const auto& t : s) row.push_back(vocab.id_or_unk(t));
    ids.push_back(row);
  }
  SkipGramConfig sg;
  sg.dim = 16;
  sg.window = 3;
  sg.subsample = 0.0;
  sg.epochs = 3;
  const auto table = train_skipgram(ids, vocab, sg);
  auto cos = [&](const std::string& a, const std::string& b) {
    return cosine(table.row(*vocab.find(a)), table.row(*vocab.find(b)));
  };
  const std::vector<std::vector<std::string>> cliques = {{"a", "b", "c"}, {"x", "y", "z"}};
  std::vector<double> within;
  std::vector<double> cross;
  for (const auto& c : cliques) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) within.push_back(cos(c[i], c[j]));
    }
  }
  for (const auto& a : cliques[0]) {
    for (const auto& b : cliques[1]) cross.push_back(cos(a, b));
  }
  const double gap = mean(within) - mean(cross);
  return {gap >= 0.3, "within " + fmt("%.4f", mean(within)) + ", cross " +
                          fmt("%.4f", mean(cross)) + ", gap " + fmt("%.4f", gap)};
}

Verdict adadelta() {
  double p = 0.0;
  double g = 1.0;
  double eg2 = 0.0;
  double edx2 = 0.0;
  auto step = [&](double& x, double grad, double& a, double& b) {
    adadelta_update<double>(std::span<double>(&x, 1), std::span<const double>(&grad, 1),
                            std::span<double>(&a, 1), std::span<double>(&b, 1), {});
  };
  step(p, g, eg2, edx2);
  double x = 1.0;
  eg2 = edx2 = 0.0;
  int reached = -1;
  for (int i = 1; i <= 5000 && reached < 0; ++i) {
    step(x, 2.0 * x, eg2, edx2);
    if (std::abs(x) < 0.05) reached = i;
  }
  return {std::abs(p + 0.0044720) <= 1e-6 && reached > 0,
          "first step " + fmt("%.7f", p) + "; |x|<0.05 after " +
              std::to_string(reached) + " steps"};
}

Verdict determinism(const fs::path& root) {
  SyntheticBundleConfig bc;
  bc.distant_lines = 3000;
  bc.gold_train = 150;
  bc.gold_validation = 100;
  const auto bundle = write_synthetic_bundle(root / "bundle_det", bc);
  auto cfg = bundle_pipeline_config(bundle, 3);
  cfg.supervised.epochs = 3;
  const auto a = run_three_phase(cfg, root / "det_a");
  run_three_phase(cfg, root / "det_b");
  std::string why;
  const bool same = testing::same_tree(root / "det_a" / "model", root / "det_b" / "model", &why) &&
                    testing::same_tree(root / "det_a" / "distant_model",
                                       root / "det_b" / "distant_model", &why);

  const Model loaded = load_model(root / "det_a" / "model");
  const auto gold = encode_examples(read_supervised_tsv(bundle.validation, "en"),
                                    loaded.vocab, loaded.arch.n_max);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < 100 && i < gold.size(); ++i) {
    const auto x = forward(loaded.params, loaded.arch, gold[i].ids);
    const auto y = forward(a.final_params, a.arch, gold[i].ids);
    if (x == y && predict(loaded.params, loaded.arch, gold[i].ids) ==
                      predict(a.final_params, a.arch, gold[i].ids)) {
      ++matches;
    }
  }
  return {same && matches == 100,
          std::string(same ? "model directories byte-identical" : "rerun differs: " + why) +
              "; " + std::to_string(matches) + "/100 reloaded predictions identical"};
}

Verdict ablation_wiring(const fs::path& root) {
  SyntheticBundleConfig bc;
  bc.distant_lines = 20000;
  const auto bundle = write_synthetic_bundle(root / "bundle20k", bc);
  struct Variant {
    std::string name;
    std::vector<std::pair<std::string, std::string>> sets;
  };
  const std::vector<Variant> variants = {
      {"random-frozen", {{"embedding_init", "random"}, {"distant.freeze_embeddings", "true"}}},
      {"random-updated", {{"embedding_init", "random"}}},
      {"pretrained-no-distant", {{"distant.epochs", "0"}}},
      {"fully-trained", {}},
  };
  std::map<std::string, std::vector<double>> scores;
  std::vector<std::string> manifests;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (const auto& v : variants) {
      KeyValueConfig kv = bundle_pipeline_config(bundle, seed).to_config();
      for (const auto& [k, val] : v.sets) kv.set(k, val);
      const auto dir = root / ("ablation_" + v.name + "_" + std::to_string(seed));
      const auto r = run_three_phase(PipelineConfig::from_config(kv), dir);
      scores[v.name].push_back(*r.supervised_best);
      // Configuration part of the manifest, without run bookkeeping.
      std::ostringstream cfg_text;
      KeyValueConfig m = KeyValueConfig::load(dir / "run_manifest.txt");
      KeyValueConfig trimmed;
      for (const auto& [k, val] : m.entries()) {
        if (!k.starts_with("run.")) trimmed.set(k, val);
      }
      trimmed.write(cfg_text);
      manifests.push_back(cfg_text.str());
      log("ablation " + v.name + " seed " + std::to_string(seed) + ": " +
          fmt("%.4f", scores[v.name].back()));
    }
  }
  std::sort(manifests.begin(), manifests.end());
  const bool distinct =
      std::adjacent_find(manifests.begin(), manifests.end()) == manifests.end();
  const double full = mean(scores["fully-trained"]);
  bool best = true;
  std::ostringstream d;
  for (const auto& v : variants) {
    const double m = mean(scores[v.name]);
    d << v.name << "=" << fmt("%.4f", m) << " ";
    if (v.name != "fully-trained") best = best && full >= m - 0.01;
  }
  d << (distinct ? "; 12 distinct manifests" : "; manifests collide");
  return {distinct && best, d.str()};
}

}  // namespace
}  // namespace sentcnn

int main() {
  using namespace sentcnn;
  const fs::path root = testing::scratch_dir("acceptance");
  int failures = 0;
  auto report = [&](int n, const std::string& name, const Verdict& v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name
              << ": " << v.detail << std::endl;
    if (!v.pass) ++failures;
  };
  auto guarded = [&](const std::function<Verdict()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      return Verdict{false, std::string("threw: ") + e.what()};
    }
  };

  report(1, "gradient suite", guarded(gradient_suite));
  report(2, "shape suite", guarded(shape_suite));
  report(3, "metric oracle", guarded(metric_oracle));
  report(4, "overfit", guarded(overfit));
  DistantStudy study;
  std::string study_error;
  try {
    study = distant_study(root);
  } catch (const std::exception& e) {
    study_error = e.what();
  }
  if (study_error.empty()) {
    report(5, "distant-supervision direction", distant_direction(study));
    report(6, "embedding-geometry direction", geometry_direction(study));
  } else {
    report(5, "distant-supervision direction", {false, "threw: " + study_error});
    report(6, "embedding-geometry direction", {false, "threw: " + study_error});
  }
  report(7, "skip-gram cliques", guarded(clique));
  report(8, "adadelta", guarded(adadelta));
  report(9, "determinism and serialization", guarded([&] { return determinism(root); }));
  report(10, "ablation wiring", guarded([&] { return ablation_wiring(root); }));
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
