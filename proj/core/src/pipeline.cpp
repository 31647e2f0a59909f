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
#include "sentcnn/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sentcnn/model_io.hpp"

namespace sentcnn {
namespace {

constexpr std::string_view kVersion = "0.1.0";

std::size_t leading_count(std::size_t n, double weight) {
  if (!(weight > 0.0 && weight <= 1.0)) {
    throw InputError("corpus weight must be in (0, 1]");
  }
  return static_cast<std::size_t>(std::ceil(weight * static_cast<double>(n)));
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\v\f") == std::string_view::npos;
}

std::vector<TokenId> unpadded_ids(const TokenSequence& tokens,
                                  const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab.id_or_unk(t));
  return ids;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void note(const ProgressFn& progress, const std::string& msg) {
  if (progress) progress(msg);
}

}  // namespace

std::string_view phase_name(Phase p) {
  return p == Phase::kDistant ? "distant" : "supervised";
}

std::string_view tool_version() { return kVersion; }

PhaseConfig PhaseConfig::distant_defaults() {
  PhaseConfig c;
  c.phase = Phase::kDistant;
  c.epochs = 1;
  c.batch_size = 128;
  c.eval_every = 1000;
  return c;
}

PhaseConfig PhaseConfig::supervised_defaults() {
  PhaseConfig c;
  c.phase = Phase::kSupervised;
  c.epochs = 20;
  c.batch_size = 32;
  c.eval_every = 0;
  return c;
}

std::vector<std::size_t> epoch_permutation(std::size_t n, std::uint64_t seed,
                                           std::uint32_t epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), epoch};
  std::mt19937_64 rng(seq);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

ConfusionMatrix evaluate(const NetworkParams<float>& params,
                         const ArchitectureSpec& arch,
                         std::span<const LabeledExample> data) {
  NetworkRunner<float> runner(params, arch);
  ConfusionMatrix cm;
  for (const auto& ex : data) {
    cm.add(static_cast<std::size_t>(ex.label), runner.predict(ex.ids));
  }
  return cm;
}

PhaseResult run_phase(const NetworkParams<float>& params,
                      const ArchitectureSpec& arch,
                      std::span<const LabeledExample> data,
                      const PhaseConfig& cfg,
                      std::span<const LabeledExample> validation,
                      const ProgressFn& progress) {
  PhaseResult res;
  res.best = params;
  if (cfg.epochs == 0) return res;
  if (data.empty()) throw InputError("phase has no training data");
  if (validation.empty()) throw InputError("empty validation set");
  if (cfg.batch_size == 0) throw InputError("batch_size must be >= 1");

  std::vector<std::size_t> pool;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].weak && data[i].label == Sentiment::kNeutral) {
      throw InputError("weak example carries the neutral label");
    }
    if (data[i].ids.size() != arch.n_max) {
      throw InputError("example length does not match n_max");
    }
    pool.push_back(i);
    if (data[i].label == Sentiment::kPositive) pos.push_back(i);
    if (data[i].label == Sentiment::kNegative) neg.push_back(i);
  }
  if (cfg.balance && !pos.empty() && !neg.empty()) {
    auto& major = pos.size() > neg.size() ? pos : neg;
    const auto& minor = pos.size() > neg.size() ? neg : pos;
    std::mt19937_64 rng(cfg.seed ^ 0xB7E151628AED2A6BULL);
    std::shuffle(major.begin(), major.end(), rng);
    major.resize(minor.size());
    pool.clear();
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data[i].label == Sentiment::kNeutral) pool.push_back(i);
    }
    pool.insert(pool.end(), pos.begin(), pos.end());
    pool.insert(pool.end(), neg.begin(), neg.end());
    std::sort(pool.begin(), pool.end());
  }

  NetworkParams<float> current = params;
  AdaDeltaState optimizer(current);
  const LossOptions loss_opts{cfg.freeze_embeddings, cfg.weight_decay};
  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t step = 0;
  std::uint64_t evaluated_at = std::numeric_limits<std::uint64_t>::max();

  auto score_now = [&] {
    const double score = f1_pn(evaluate(current, arch, validation));
    res.history.push_back({cfg.phase, step, score});
    evaluated_at = step;
    if (score > best) {
      best = score;
      res.best = current;
      res.best_optimizer = optimizer;
      res.best_step = step;
    }
    std::ostringstream msg;
    msg << phase_name(cfg.phase) << " step " << step << " val_f1=" << score;
    note(progress, msg.str());
  };

  std::vector<LabeledIds> batch;
  for (std::uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = epoch_permutation(pool.size(), cfg.seed, epoch);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t k = start; k < end; ++k) {
        const auto& ex = data[pool[order[k]]];
        batch.push_back({ex.ids, static_cast<std::size_t>(ex.label)});
      }
      NetworkRunner<float> runner(current, arch);
      auto lg = runner.loss_and_grads(batch, loss_opts);
      if (!std::isfinite(lg.loss)) throw Error("diverged");
      optimizer.step(current, lg.grads);
      ++step;
      if (cfg.eval_every > 0 && step % cfg.eval_every == 0) score_now();
    }
    if (evaluated_at != step) score_now();
  }
  res.best_score = best;
  return res;
}

// ---------------------------------------------------------------------------

std::string_view corpus_kind_name(CorpusKind k) {
  switch (k) {
    case CorpusKind::kEmbedding:
      return "embedding";
    case CorpusKind::kDistant:
      return "distant";
    case CorpusKind::kSupervised:
      return "supervised";
    case CorpusKind::kValidation:
      return "validation";
  }
  return "?";
}

std::string_view variant_name(MixVariant v) {
  switch (v) {
    case MixVariant::kSL:
      return "SL";
    case MixVariant::kML:
      return "ML";
    case MixVariant::kFML:
      return "FML";
  }
  return "?";
}

void CorpusMix::validate() const {
  if (entries.empty()) throw InputError("corpus mix has no corpora");
  for (const auto& e : entries) {
    if (!(e.weight > 0.0 && e.weight <= 1.0)) {
      throw InputError("corpus weight must be in (0, 1]: " + e.path.string());
    }
  }
  if (variant == MixVariant::kSL) {
    for (const auto& e : entries) {
      if (e.language != entries.front().language) {
        throw InputError("SL variant requires a single language, found '" +
                         entries.front().language + "' and '" + e.language + "'");
      }
    }
  }
  if (variant == MixVariant::kML && target_language.empty()) {
    throw InputError("ML variant requires target_language");
  }
}

std::vector<CorpusEntry> CorpusMix::select(CorpusKind kind) const {
  std::vector<CorpusEntry> out;
  const bool gold = kind == CorpusKind::kSupervised ||
                    kind == CorpusKind::kValidation;
  for (const auto& e : entries) {
    if (e.kind != kind) continue;
    if (variant == MixVariant::kML && gold && e.language != target_language) {
      continue;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<TokenSequence> read_raw_corpus(const std::filesystem::path& path,
                                           double weight) {
  std::vector<TokenSequence> out;
  for (const auto& line : read_lines(path)) {
    if (blank(line)) continue;
    out.push_back(preprocess(line));
  }
  out.resize(leading_count(out.size(), weight));
  return out;
}

std::vector<TextExample> read_distant_corpus(const std::filesystem::path& path,
                                             const std::string& language,
                                             double weight) {
  std::vector<TextExample> out;
  for (const auto& line : read_lines(path)) {
    if (blank(line)) continue;
    auto labeled = weak_label(preprocess(line));
    if (!labeled || labeled->second.empty()) continue;
    TextExample ex;
    ex.tokens = std::move(labeled->second);
    ex.label = labeled->first == WeakLabel::kPositive ? Sentiment::kPositive
                                                      : Sentiment::kNegative;
    ex.weak = true;
    ex.language = language;
    out.push_back(std::move(ex));
  }
  out.resize(leading_count(out.size(), weight));
  return out;
}

std::vector<TextExample> read_supervised_tsv(const std::filesystem::path& path,
                                             const std::string& language,
                                             double weight) {
  std::vector<TextExample> out;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw InputError(where + ": expected id<TAB>label<TAB>text");
    }
    const std::string label = line.substr(t1 + 1, t2 - t1 - 1);
    const auto s = parse_sentiment(label);
    if (!s) throw InputError(where + ": malformed label '" + label + "'");
    TextExample ex;
    ex.tokens = preprocess(std::string_view(line).substr(t2 + 1));
    ex.label = *s;
    ex.language = language;
    out.push_back(std::move(ex));
  }
  out.resize(leading_count(out.size(), weight));
  return out;
}

PhaseData load_phase_data(const CorpusMix& mix, double validation_fraction,
                          std::uint64_t seed) {
  mix.validate();
  PhaseData data;
  for (const auto& e : mix.select(CorpusKind::kEmbedding)) {
    auto text = read_raw_corpus(e.path, e.weight);
    data.embedding_text.insert(data.embedding_text.end(),
                               std::make_move_iterator(text.begin()),
                               std::make_move_iterator(text.end()));
  }
  auto append = [](std::vector<TextExample>& dst, std::vector<TextExample> src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()),
               std::make_move_iterator(src.end()));
  };
  for (const auto& e : mix.select(CorpusKind::kDistant)) {
    append(data.distant, read_distant_corpus(e.path, e.language, e.weight));
  }
  for (const auto& e : mix.select(CorpusKind::kSupervised)) {
    append(data.supervised, read_supervised_tsv(e.path, e.language, e.weight));
  }
  const auto val_entries = mix.select(CorpusKind::kValidation);
  for (const auto& e : val_entries) {
    append(data.validation, read_supervised_tsv(e.path, e.language, e.weight));
  }
  if (val_entries.empty() && !data.supervised.empty()) {
    auto [train, val] = split_validation(std::move(data.supervised),
                                         validation_fraction,
                                         seed ^ 0x243F6A8885A308D3ULL);
    data.supervised = std::move(train);
    data.validation = std::move(val);
  }
  return data;
}

std::vector<LabeledExample> encode_examples(const std::vector<TextExample>& in,
                                            const Vocabulary& vocab,
                                            std::size_t n_max) {
  std::vector<LabeledExample> out;
  out.reserve(in.size());
  for (const auto& ex : in) {
    out.push_back({vocab.encode(ex.tokens, n_max), ex.label, ex.weak, ex.language});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

void read_phase(const KeyValueConfig& c, const std::string& p, PhaseConfig& ph) {
  ph.epochs = static_cast<std::uint32_t>(c.get_uint(p + ".epochs", ph.epochs));
  ph.batch_size = c.get_uint(p + ".batch_size", ph.batch_size);
  ph.eval_every = c.get_uint(p + ".eval_every", ph.eval_every);
  ph.freeze_embeddings = c.get_bool(p + ".freeze_embeddings", ph.freeze_embeddings);
  ph.balance = c.get_bool(p + ".balance", ph.balance);
  ph.seed = c.get_uint(p + ".seed", ph.seed);
  ph.weight_decay = c.get_double(p + ".weight_decay", ph.weight_decay);
  if (ph.batch_size == 0) throw InputError(p + ".batch_size must be >= 1");
  if (ph.weight_decay < 0.0) throw InputError(p + ".weight_decay must be >= 0");
}

void write_phase(KeyValueConfig& c, const std::string& p, const PhaseConfig& ph) {
  c.set(p + ".epochs", std::to_string(ph.epochs));
  c.set(p + ".batch_size", std::to_string(ph.batch_size));
  c.set(p + ".eval_every", std::to_string(ph.eval_every));
  c.set(p + ".freeze_embeddings", ph.freeze_embeddings ? "true" : "false");
  c.set(p + ".balance", ph.balance ? "true" : "false");
  c.set(p + ".seed", std::to_string(ph.seed));
  c.set(p + ".weight_decay", format_double(ph.weight_decay));
}

CorpusEntry parse_corpus_entry(const std::string& key, const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() < 3 || parts.size() > 4) {
    throw InputError("config key '" + key +
                     "': expected kind,language,path[,weight]");
  }
  CorpusEntry e;
  if (parts[0] == "embedding") {
    e.kind = CorpusKind::kEmbedding;
  } else if (parts[0] == "distant") {
    e.kind = CorpusKind::kDistant;
  } else if (parts[0] == "supervised") {
    e.kind = CorpusKind::kSupervised;
  } else if (parts[0] == "validation") {
    e.kind = CorpusKind::kValidation;
  } else {
    throw InputError("config key '" + key + "': unknown corpus kind '" +
                     parts[0] + "'");
  }
  e.language = parts[1];
  e.path = parts[2];
  if (parts.size() == 4) {
    KeyValueConfig tmp;
    tmp.set(key, parts[3]);
    e.weight = tmp.get_double(key, 1.0);
  }
  return e;
}

}  // namespace

const std::vector<std::string>& pipeline_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = {
        "variant",           "target_language", "arch",
        "filters",           "n_max",           "min_count",
        "embedding_init",    "seed",            "validation_fraction",
        "skipgram.window",   "skipgram.dim",    "skipgram.negatives",
        "skipgram.subsample", "skipgram.epochs", "skipgram.lr0",
        "skipgram.seed",     "skipgram.threads"};
    for (const char* p : {"distant", "supervised"}) {
      for (const char* f : {"epochs", "batch_size", "eval_every",
                            "freeze_embeddings", "balance", "seed",
                            "weight_decay"}) {
        k.push_back(std::string(p) + "." + f);
      }
    }
    return k;
  }();
  return keys;
}

ArchitectureSpec PipelineConfig::architecture() const {
  ArchitectureSpec a = ArchitectureSpec::preset(arch, n_max);
  if (filters > 0) a = a.with_filters(filters);
  a.validate();
  return a;
}

PipelineConfig PipelineConfig::from_config(const KeyValueConfig& c) {
  c.check_known(pipeline_config_keys(), {"corpus.", "run."});
  PipelineConfig p;
  const std::string variant = c.get_string("variant", "SL");
  if (variant == "SL") {
    p.mix.variant = MixVariant::kSL;
  } else if (variant == "ML") {
    p.mix.variant = MixVariant::kML;
  } else if (variant == "FML") {
    p.mix.variant = MixVariant::kFML;
  } else {
    throw InputError("unknown variant '" + variant + "' (expected SL, ML or FML)");
  }
  p.mix.target_language = c.get_string("target_language", "");
  for (const auto& [k, v] : c.entries()) {
    if (k.starts_with("corpus.")) p.mix.entries.push_back(parse_corpus_entry(k, v));
  }

  p.arch = c.get_string("arch", p.arch);
  p.filters = c.get_uint("filters", p.filters);
  p.n_max = c.get_uint("n_max", p.n_max);
  p.min_count = c.get_uint("min_count", p.min_count);
  const std::string init = c.get_string("embedding_init", "pretrained");
  if (init == "pretrained") {
    p.init = EmbeddingInit::kPretrained;
  } else if (init == "random") {
    p.init = EmbeddingInit::kRandom;
  } else {
    throw InputError("embedding_init must be 'pretrained' or 'random'");
  }
  p.seed = c.get_uint("seed", p.seed);
  p.validation_fraction = c.get_double("validation_fraction", p.validation_fraction);

  auto& sg = p.skipgram;
  sg.window = static_cast<std::uint32_t>(c.get_uint("skipgram.window", sg.window));
  sg.dim = static_cast<std::uint32_t>(c.get_uint("skipgram.dim", sg.dim));
  sg.negatives =
      static_cast<std::uint32_t>(c.get_uint("skipgram.negatives", sg.negatives));
  sg.subsample = c.get_double("skipgram.subsample", sg.subsample);
  sg.epochs = static_cast<std::uint32_t>(c.get_uint("skipgram.epochs", sg.epochs));
  sg.lr0 = c.get_double("skipgram.lr0", sg.lr0);
  sg.seed = c.get_uint("skipgram.seed", p.seed);
  sg.threads = static_cast<unsigned>(c.get_uint("skipgram.threads", 1));
  sg.validate();

  p.distant.seed = p.seed + 1;
  p.supervised.seed = p.seed + 2;
  read_phase(c, "distant", p.distant);
  read_phase(c, "supervised", p.supervised);
  p.architecture();
  return p;
}

KeyValueConfig PipelineConfig::to_config() const {
  KeyValueConfig c;
  c.set("variant", std::string(variant_name(mix.variant)));
  c.set("target_language", mix.target_language);
  for (std::size_t i = 0; i < mix.entries.size(); ++i) {
    const auto& e = mix.entries[i];
    char key[32];
    std::snprintf(key, sizeof(key), "corpus.%03zu", i + 1);
    c.set(key, std::string(corpus_kind_name(e.kind)) + "," + e.language + "," +
                   e.path.string() + "," + format_double(e.weight));
  }
  c.set("arch", arch);
  c.set("filters", std::to_string(filters));
  c.set("n_max", std::to_string(n_max));
  c.set("min_count", std::to_string(min_count));
  c.set("embedding_init", init == EmbeddingInit::kPretrained ? "pretrained" : "random");
  c.set("seed", std::to_string(seed));
  c.set("validation_fraction", format_double(validation_fraction));
  c.set("skipgram.window", std::to_string(skipgram.window));
  c.set("skipgram.dim", std::to_string(skipgram.dim));
  c.set("skipgram.negatives", std::to_string(skipgram.negatives));
  c.set("skipgram.subsample", format_double(skipgram.subsample));
  c.set("skipgram.epochs", std::to_string(skipgram.epochs));
  c.set("skipgram.lr0", format_double(skipgram.lr0));
  c.set("skipgram.seed", std::to_string(skipgram.seed));
  c.set("skipgram.threads", std::to_string(skipgram.threads));
  write_phase(c, "distant", distant);
  write_phase(c, "supervised", supervised);
  return c;
}

void write_history_tsv(std::ostream& out, std::span<const HistoryPoint> history) {
  out << "step\tphase\tval_f1\n";
  for (const auto& h : history) {
    out << h.step << '\t' << phase_name(h.phase) << '\t' << format_double(h.score)
        << '\n';
  }
}

// ---------------------------------------------------------------------------

namespace {

void write_run_manifest(const std::filesystem::path& path,
                        const PipelineConfig& cfg, const KeyValueConfig& extra) {
  KeyValueConfig m = cfg.to_config();
  m.set("run.version", std::string(kVersion));
  m.merge(extra);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  m.write(out);
}

}  // namespace

PipelineResult run_three_phase(const PipelineConfig& cfg,
                               const std::filesystem::path& out_dir,
                               const ProgressFn& progress) {
  PipelineResult result;
  result.arch = cfg.architecture();
  const ArchitectureSpec& arch = result.arch;
  const bool write = !out_dir.empty();
  KeyValueConfig run_info;
  run_info.set("run.status", "running");
  if (write) {
    std::filesystem::create_directories(out_dir);
    write_run_manifest(out_dir / "run_manifest.txt", cfg, run_info);
  }

  auto t0 = std::chrono::steady_clock::now();
  note(progress, "loading corpora");
  PhaseData data = load_phase_data(cfg.mix, cfg.validation_fraction, cfg.seed);
  if (cfg.distant.epochs > 0 && data.distant.empty()) {
    throw InputError("empty distant corpus with distant epochs > 0");
  }
  if (cfg.supervised.epochs > 0 && data.supervised.empty()) {
    throw InputError("empty supervised corpus with supervised epochs > 0");
  }

  const std::vector<TokenSequence>* vocab_text = &data.embedding_text;
  std::vector<TokenSequence> fallback_text;
  if (data.embedding_text.empty()) {
    for (const auto& ex : data.distant) fallback_text.push_back(ex.tokens);
    for (const auto& ex : data.supervised) fallback_text.push_back(ex.tokens);
    vocab_text = &fallback_text;
  }
  result.vocab = Vocabulary::build(*vocab_text, cfg.min_count);
  const Vocabulary& vocab = *result.vocab;
  result.timings.push_back({"load", seconds_since(t0)});
  {
    std::ostringstream msg;
    msg << "vocabulary: " << vocab.size() << " entries; distant "
        << data.distant.size() << ", supervised " << data.supervised.size()
        << ", validation " << data.validation.size() << " examples";
    note(progress, msg.str());
  }
  if (write) vocab.save(out_dir / "vocab.tsv");

  // Phase i: skip-gram embeddings.
  t0 = std::chrono::steady_clock::now();
  if (cfg.init == EmbeddingInit::kPretrained) {
    std::vector<std::vector<TokenId>> corpus;
    corpus.reserve(vocab_text->size());
    for (const auto& seq : *vocab_text) corpus.push_back(unpadded_ids(seq, vocab));
    SkipGramTrainer trainer(vocab, cfg.skipgram, std::move(corpus));
    for (std::uint32_t e = 0; e < cfg.skipgram.epochs; ++e) {
      trainer.run_epoch();
      note(progress, "skip-gram epoch " + std::to_string(e + 1) + "/" +
                         std::to_string(cfg.skipgram.epochs));
    }
    result.skipgram_embeddings = trainer.input_vectors();
    if (write) {
      save_embeddings_bin(out_dir / "embeddings.bin", *result.skipgram_embeddings);
      std::ofstream txt(out_dir / "embeddings.txt", std::ios::binary);
      write_embeddings_text(txt, *result.skipgram_embeddings, vocab);
    }
  }
  result.timings.push_back({"embedding", seconds_since(t0)});

  const auto validation = encode_examples(data.validation, vocab, arch.n_max);
  if (validation.empty() && (cfg.distant.epochs > 0 || cfg.supervised.epochs > 0)) {
    throw InputError("no validation examples");
  }

  NetworkParams<float> params = build_network(
      arch, vocab.size(), cfg.skipgram.dim,
      result.skipgram_embeddings ? &*result.skipgram_embeddings : nullptr,
      cfg.seed);
  std::optional<AdaDeltaState> optimizer;

  // Phase ii: distant supervision.
  t0 = std::chrono::steady_clock::now();
  if (cfg.distant.epochs > 0) {
    const auto distant = encode_examples(data.distant, vocab, arch.n_max);
    PhaseConfig pc = cfg.distant;
    pc.phase = Phase::kDistant;
    PhaseResult pr = run_phase(params, arch, distant, pc, validation, progress);
    params = std::move(pr.best);
    optimizer = std::move(pr.best_optimizer);
    result.distant_best = pr.best_score;
    result.after_distant = params;
    result.history.insert(result.history.end(), pr.history.begin(),
                          pr.history.end());
    if (write) {
      save_model(out_dir / "distant_model", arch, vocab, params,
                 optimizer ? &*optimizer : nullptr);
    }
  }
  result.timings.push_back({"distant", seconds_since(t0)});

  // Phase iii: supervised fine-tuning.
  t0 = std::chrono::steady_clock::now();
  if (cfg.supervised.epochs > 0) {
    const auto supervised = encode_examples(data.supervised, vocab, arch.n_max);
    PhaseConfig pc = cfg.supervised;
    pc.phase = Phase::kSupervised;
    PhaseResult pr = run_phase(params, arch, supervised, pc, validation, progress);
    params = std::move(pr.best);
    optimizer = std::move(pr.best_optimizer);
    result.supervised_best = pr.best_score;
    result.history.insert(result.history.end(), pr.history.begin(),
                          pr.history.end());
  }
  result.timings.push_back({"supervised", seconds_since(t0)});
  result.final_params = std::move(params);

  if (write) {
    save_model(out_dir / "model", arch, vocab, result.final_params,
               optimizer ? &*optimizer : nullptr);
    std::ofstream hist(out_dir / "history.tsv", std::ios::binary);
    write_history_tsv(hist, result.history);
    run_info.set("run.status", "complete");
    for (const auto& t : result.timings) {
      run_info.set("run.seconds." + t.phase, format_double(t.seconds));
    }
    if (result.distant_best) {
      run_info.set("run.distant_best_f1", format_double(*result.distant_best));
    }
    if (result.supervised_best) {
      run_info.set("run.supervised_best_f1",
                   format_double(*result.supervised_best));
    }
    write_run_manifest(out_dir / "run_manifest.txt", cfg, run_info);
  }
  return result;
}

}  // namespace sentcnn
