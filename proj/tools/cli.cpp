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
#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sentcnn/config.hpp"
#include "sentcnn/embed.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/metrics.hpp"
#include "sentcnn/model_io.hpp"
#include "sentcnn/network.hpp"
#include "sentcnn/pipeline.hpp"
#include "sentcnn/textprep.hpp"
#include "sentcnn/vocab.hpp"

namespace sentcnn::cli {
namespace fs = std::filesystem;
namespace {

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// corpus.* values are kind,language,path[,weight]; relative paths are taken
// relative to `base`.
std::string resolve_corpus_value(const std::string& value, const fs::path& base) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() < 3) return value;  // rejected later with a proper message
  fs::path p(parts[2]);
  if (p.is_relative()) parts[2] = fs::absolute(base / p).lexically_normal().string();
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "," + parts[i];
  return out;
}

struct RunOptions {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir;
};

PipelineConfig resolve_pipeline(const RunOptions& o) {
  KeyValueConfig kv;
  if (!o.config.empty()) {
    kv = KeyValueConfig::load(o.config);
    const fs::path base = fs::absolute(o.config).parent_path();
    const auto entries = kv.entries();
    for (const auto& [k, v] : entries) {
      if (k.starts_with("corpus.")) kv.set(k, resolve_corpus_value(v, base));
    }
  }
  for (const auto& s : o.sets) {
    KeyValueConfig one;
    one.set_assignment(s);
    for (const auto& [k, v] : one.entries()) {
      kv.set(k, k.starts_with("corpus.") ? resolve_corpus_value(v, fs::current_path())
                                         : v);
    }
  }
  if (o.seed) {
    kv.set("seed", std::to_string(*o.seed));
    kv.set("skipgram.seed", std::to_string(*o.seed));
    kv.set("distant.seed", std::to_string(*o.seed + 1));
    kv.set("supervised.seed", std::to_string(*o.seed + 2));
  }
  if (o.threads) kv.set("skipgram.threads", std::to_string(*o.threads));
  return PipelineConfig::from_config(kv);
}

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config, "key=value configuration file");
  cmd->add_option("--set", o.sets, "override, key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--threads", o.threads,
                  "skip-gram worker threads (>1 is not deterministic)");
  cmd->add_option("-o,--out", o.out_dir, "output directory")->required();
}

int cmd_preprocess(const std::string& in_path, const std::string& out_path,
                   std::ostream& out) {
  const auto lines = read_lines(in_path);
  std::ofstream file;
  std::ostream* dst = &out;
  if (!out_path.empty()) {
    file = open_out(out_path);
    dst = &file;
  }
  for (const auto& line : lines) *dst << join_tokens(preprocess(line)) << '\n';
  return kOk;
}

int cmd_weak_label(const std::string& in_path, const std::string& pos_path,
                   const std::string& neg_path, std::ostream& out) {
  const auto lines = read_lines(in_path);
  auto pos = open_out(pos_path);
  auto neg = open_out(neg_path);
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::size_t discarded = 0;
  for (const auto& line : lines) {
    auto labeled = weak_label(split_whitespace(line));
    if (!labeled) {
      ++discarded;
      continue;
    }
    if (labeled->first == WeakLabel::kPositive) {
      pos << join_tokens(labeled->second) << '\n';
      ++n_pos;
    } else {
      neg << join_tokens(labeled->second) << '\n';
      ++n_neg;
    }
  }
  out << "positive=" << n_pos << "\nnegative=" << n_neg
      << "\ndiscarded=" << discarded << '\n';
  return kOk;
}

std::vector<TokenSequence> read_token_corpus(const std::vector<std::string>& paths) {
  std::vector<TokenSequence> corpus;
  for (const auto& p : paths) {
    for (const auto& line : read_lines(p)) {
      auto tokens = preprocess(line);
      if (!tokens.empty()) corpus.push_back(std::move(tokens));
    }
  }
  return corpus;
}

int cmd_build_vocab(const std::vector<std::string>& inputs, std::uint64_t min_count,
                    const std::string& out_path, std::ostream& out) {
  const auto vocab = Vocabulary::build(read_token_corpus(inputs), min_count);
  if (out_path.empty()) {
    vocab.write_tsv(out);
  } else {
    vocab.save(out_path);
  }
  return kOk;
}

int cmd_train_embeddings(const std::vector<std::string>& inputs,
                         const std::string& vocab_path, std::uint64_t min_count,
                         SkipGramConfig sg, const std::string& out_dir,
                         std::ostream& err) {
  const auto corpus_text = read_token_corpus(inputs);
  const Vocabulary vocab = vocab_path.empty()
                               ? Vocabulary::build(corpus_text, min_count)
                               : Vocabulary::load(vocab_path);
  std::vector<std::vector<TokenId>> corpus;
  corpus.reserve(corpus_text.size());
  for (const auto& seq : corpus_text) {
    std::vector<TokenId> ids;
    for (const auto& t : seq) ids.push_back(vocab.id_or_unk(t));
    corpus.push_back(std::move(ids));
  }
  SkipGramTrainer trainer(vocab, sg, std::move(corpus));
  for (std::uint32_t e = 0; e < sg.epochs; ++e) {
    trainer.run_epoch();
    err << "skip-gram epoch " << e + 1 << "/" << sg.epochs << '\n';
  }
  fs::create_directories(out_dir);
  vocab.save(fs::path(out_dir) / "vocab.tsv");
  save_embeddings_bin(fs::path(out_dir) / "embeddings.bin", trainer.input_vectors());
  auto txt = open_out(fs::path(out_dir) / "embeddings.txt");
  write_embeddings_text(txt, trainer.input_vectors(), vocab);
  return kOk;
}

int cmd_train(const RunOptions& o, bool pretrain_only, std::ostream& err) {
  PipelineConfig cfg = resolve_pipeline(o);
  if (pretrain_only) cfg.supervised.epochs = 0;
  auto result = run_three_phase(cfg, o.out_dir,
                                [&err](std::string_view msg) { err << msg << '\n'; });
  if (result.distant_best) {
    err << "distant best val_f1=" << fixed(*result.distant_best, 4) << '\n';
  }
  if (result.supervised_best) {
    err << "supervised best val_f1=" << fixed(*result.supervised_best, 4) << '\n';
  }
  return kOk;
}

int cmd_evaluate(const std::string& model_dir, const std::string& gold,
                 std::ostream& out) {
  const Model model = load_model(model_dir);
  const auto examples = encode_examples(read_supervised_tsv(gold, ""), model.vocab,
                                        model.arch.n_max);
  write_report(out, evaluate(model.params, model.arch, examples));
  return kOk;
}

int cmd_predict(const std::string& model_dir, const std::string& in_path,
                std::ostream& out) {
  const Model model = load_model(model_dir);
  NetworkRunner<float> runner(model.params, model.arch);
  for (const auto& line : read_lines(in_path)) {
    const auto ids = model.vocab.encode(preprocess(line), model.arch.n_max);
    const auto probs = runner.forward(ids);
    const auto label = static_cast<Sentiment>(argmax(std::span<const float>(probs)));
    out << sentiment_name(label);
    for (float p : probs) out << '\t' << fixed(p, 4);
    out << '\n';
  }
  return kOk;
}

struct ProjectOptions {
  std::string model_dir;
  std::string embeddings;
  std::string vocab;
  std::string tokens;
  std::string out_path;
  std::vector<std::string> pairs;
};

int cmd_project(const ProjectOptions& o, std::ostream& out) {
  std::optional<Model> model;
  std::optional<Vocabulary> vocab;
  EmbeddingTable table;
  if (!o.model_dir.empty()) {
    model = load_model(o.model_dir);
    table = model->params.embedding;
  } else if (!o.embeddings.empty() && !o.vocab.empty()) {
    vocab = Vocabulary::load(o.vocab);
    table = load_embeddings_bin(o.embeddings);
    if (table.rows() != vocab->size()) {
      throw InputError("embedding rows do not match the vocabulary size");
    }
  } else {
    throw InputError("give --model, or both --embeddings and --vocab");
  }
  const Vocabulary& v = model ? model->vocab : *vocab;
  auto lookup = [&v](const std::string& token) {
    const auto id = v.find(token);
    if (!id) throw InputError("unknown token '" + token + "'");
    return *id;
  };

  if (!o.tokens.empty()) {
    std::vector<std::string> tokens;
    for (const auto& line : read_lines(o.tokens)) {
      const auto t = split_whitespace(line);
      if (!t.empty()) tokens.push_back(t.front());
    }
    std::vector<TokenId> ids;
    for (const auto& t : tokens) ids.push_back(lookup(t));
    const auto proj = pca_project_2d(table, ids);
    std::ofstream file;
    std::ostream* dst = &out;
    if (!o.out_path.empty()) {
      file = open_out(o.out_path);
      dst = &file;
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      *dst << tokens[i] << '\t' << fixed(proj.points[i].x, 6) << '\t'
           << fixed(proj.points[i].y, 6) << '\n';
    }
  }
  for (const auto& pair : o.pairs) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) {
      throw InputError("--pair expects tokenA,tokenB, got '" + pair + "'");
    }
    const std::string a = pair.substr(0, comma);
    const std::string b = pair.substr(comma + 1);
    const double c = cosine(table.row(lookup(a)), table.row(lookup(b)));
    out << "cosine\t" << a << '\t' << b << '\t' << fixed(c, 4) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tweet sentiment CNN: preprocessing, training and evaluation",
               "sentcnn"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;
  auto* pre = app.add_subcommand("preprocess", "normalize and tokenize raw tweets");
  pre->add_option("input", in_path, "one raw tweet per line")->required();
  pre->add_option("-o,--out", out_path, "output file (default: stdout)");

  std::string pos_path;
  std::string neg_path;
  auto* wl = app.add_subcommand("weak-label", "split tweets by emoticon polarity");
  wl->add_option("input", in_path, "preprocessed tweets")->required();
  wl->add_option("--pos", pos_path, "positive output")->required();
  wl->add_option("--neg", neg_path, "negative output")->required();

  std::vector<std::string> inputs;
  std::uint64_t min_count = 15;
  auto* bv = app.add_subcommand("build-vocab", "count tokens and write vocab.tsv");
  bv->add_option("inputs", inputs, "text files")->required();
  bv->add_option("--min-count", min_count, "minimum token count");
  bv->add_option("-o,--out", out_path, "output file (default: stdout)");

  SkipGramConfig sg;
  std::string vocab_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  auto* te = app.add_subcommand("train-embeddings", "train skip-gram word vectors");
  te->add_option("inputs", inputs, "text files")->required();
  te->add_option("--vocab", vocab_path, "existing vocab.tsv");
  te->add_option("--min-count", min_count, "minimum token count");
  te->add_option("--dim", sg.dim, "vector size");
  te->add_option("--window", sg.window, "context window");
  te->add_option("--negatives", sg.negatives, "negative samples per pair");
  te->add_option("--subsample", sg.subsample, "frequent-word subsampling t");
  te->add_option("--epochs", sg.epochs, "passes over the corpus");
  te->add_option("--lr", sg.lr0, "initial learning rate");
  te->add_option("--seed", seed, "random seed");
  te->add_option("--threads", threads, "worker threads (>1 is not deterministic)");
  te->add_option("-o,--out", out_dir, "output directory")->required();

  RunOptions pretrain_opts;
  auto* pt = app.add_subcommand("pretrain", "phases i and ii: embeddings, distant");
  add_run_options(pt, pretrain_opts);
  RunOptions train_opts;
  auto* tr = app.add_subcommand("train", "all three phases");
  add_run_options(tr, train_opts);

  std::string model_dir;
  std::string gold;
  auto* ev = app.add_subcommand("evaluate", "score a model on gold data");
  ev->add_option("--model", model_dir, "model directory")->required();
  ev->add_option("gold", gold, "id<TAB>label<TAB>text file")->required();

  auto* pr = app.add_subcommand("predict", "label raw tweets");
  pr->add_option("--model", model_dir, "model directory")->required();
  pr->add_option("input", in_path, "one raw tweet per line")->required();

  ProjectOptions po;
  auto* pj = app.add_subcommand("project-embeddings",
                                "2-d PCA projection and cosine similarities");
  pj->add_option("--model", po.model_dir, "model directory");
  pj->add_option("--embeddings", po.embeddings, "embeddings.bin");
  pj->add_option("--vocab", po.vocab, "vocab.tsv for --embeddings");
  pj->add_option("tokens", po.tokens, "one token per line");
  pj->add_option("-o,--out", po.out_path, "output file (default: stdout)");
  pj->add_option("--pair", po.pairs, "tokenA,tokenB (repeatable)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*pre) return cmd_preprocess(in_path, out_path, out);
    if (*wl) return cmd_weak_label(in_path, pos_path, neg_path, out);
    if (*bv) return cmd_build_vocab(inputs, min_count, out_path, out);
    if (*te) {
      if (seed) sg.seed = *seed;
      if (threads) sg.threads = *threads;
      sg.validate();
      return cmd_train_embeddings(inputs, vocab_path, min_count, sg, out_dir, err);
    }
    if (*pt) return cmd_train(pretrain_opts, true, err);
    if (*tr) return cmd_train(train_opts, false, err);
    if (*ev) return cmd_evaluate(model_dir, gold, out);
    if (*pr) return cmd_predict(model_dir, in_path, out);
    if (*pj) return cmd_project(po, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace sentcnn::cli
