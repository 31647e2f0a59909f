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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "scenarios.hpp"
#include "sentcnn/metrics.hpp"
#include "sentcnn/model_io.hpp"
#include "sentcnn/pipeline.hpp"
#include "sentcnn/synthetic.hpp"

namespace sentcnn {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sentcnn");
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"predict"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"--version"}).out, std::string(tool_version()) + "\n");
}

TEST(Cli, Preprocess) {
  const auto dir = testing::scratch_dir("cli_pre");
  write_file(dir / "raw.txt", "Check http://t.co/Ab1 @Bob NOW\nwow!!!\ngreat day :)\n");
  write_file(dir / "empty.txt", "");
  const auto o = run_cli({"preprocess", (dir / "raw.txt").string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "check <url> <user> now\nwow !!!\ngreat day :)\n");
  const auto e = run_cli({"preprocess", (dir / "empty.txt").string()});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "");
  const auto m = run_cli({"preprocess", (dir / "missing.txt").string()});
  EXPECT_EQ(m.code, cli::kInputError);
  EXPECT_FALSE(m.err.empty());
  EXPECT_EQ(run_cli({"preprocess", (dir / "raw.txt").string(), "-o",
                     (dir / "out.txt").string()})
                .code,
            0);
  EXPECT_EQ(lines(read_file(dir / "out.txt")).size(), 3u);
}

TEST(Cli, WeakLabel) {
  const auto dir = testing::scratch_dir("cli_weak");
  write_file(dir / "in.txt", "good :)\nbad :(\nboth :) :(\n");
  const auto o = run_cli({"weak-label", (dir / "in.txt").string(), "--pos",
                          (dir / "pos.txt").string(), "--neg", (dir / "neg.txt").string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "positive=1\nnegative=1\ndiscarded=1\n");
  EXPECT_EQ(read_file(dir / "pos.txt"), "good\n");
  EXPECT_EQ(read_file(dir / "neg.txt"), "bad\n");

  write_file(dir / "plain.txt", "no faces\nat all\n");
  const auto p = run_cli({"weak-label", (dir / "plain.txt").string(), "--pos",
                          (dir / "p2.txt").string(), "--neg", (dir / "n2.txt").string()});
  EXPECT_EQ(p.out, "positive=0\nnegative=0\ndiscarded=2\n");
  EXPECT_EQ(read_file(dir / "p2.txt"), "");
  EXPECT_EQ(read_file(dir / "n2.txt"), "");
}

TEST(Cli, BuildVocab) {
  const auto dir = testing::scratch_dir("cli_vocab");
  write_file(dir / "a.txt", "a b\na c\n");
  const auto o = run_cli({"build-vocab", (dir / "a.txt").string(), "--min-count", "2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "<pad>\t0\t0\n<unk>\t1\t0\na\t2\t2\n");
  write_file(dir / "empty.txt", "");
  EXPECT_EQ(run_cli({"build-vocab", (dir / "empty.txt").string()}).code,
            cli::kInputError);
}

class CliModel : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(testing::scratch_dir("cli_model"));
    SyntheticBundleConfig bc;
    bc.distant_lines = 1500;
    bc.gold_train = 90;
    bc.gold_validation = 60;
    bundle_ = new SyntheticBundle(write_synthetic_bundle(*dir_ / "data", bc));
    // Config file with paths relative to its own directory.
    write_file(*dir_ / "data" / "run.cfg",
               "corpus.emb = embedding,en,distant.txt\n"
               "corpus.dist = distant,en,distant.txt\n"
               "corpus.train = supervised,en,train.tsv\n"
               "corpus.val = validation,en,validation.tsv\n"
               "n_max = 24\nmin_count = 1\nfilters = 16\n"
               "skipgram.dim = 8\nskipgram.epochs = 1\nskipgram.subsample = 0\n"
               "distant.batch_size = 32\nsupervised.epochs = 2\n");
    first_ = new Outcome(train("run_a"));
  }
  static void TearDownTestSuite() {
    delete first_;
    delete bundle_;
    delete dir_;
  }
  static Outcome train(const std::string& name) {
    return run_cli({"train", "--config", (*dir_ / "data" / "run.cfg").string(), "--seed",
                    "5", "-o", (*dir_ / name).string()});
  }
  static fs::path model() { return *dir_ / "run_a" / "model"; }
  static fs::path* dir_;
  static SyntheticBundle* bundle_;
  static Outcome* first_;
};
fs::path* CliModel::dir_ = nullptr;
SyntheticBundle* CliModel::bundle_ = nullptr;
Outcome* CliModel::first_ = nullptr;

TEST_F(CliModel, TrainWritesModelDirectory) {
  ASSERT_EQ(first_->code, 0) << first_->err;
  EXPECT_TRUE(fs::exists(model() / "manifest.txt"));
  EXPECT_NE(first_->err.find("supervised best val_f1="), std::string::npos);
  const auto manifest = KeyValueConfig::load(*dir_ / "run_a" / "run_manifest.txt");
  EXPECT_EQ(manifest.get_uint("seed", 0), 5u);
  EXPECT_EQ(manifest.get_uint("distant.seed", 0), 6u);
  EXPECT_EQ(manifest.get_uint("supervised.seed", 0), 7u);
}

TEST_F(CliModel, RerunIsByteIdentical) {
  ASSERT_EQ(first_->code, 0);
  ASSERT_EQ(train("run_b").code, 0);
  std::string why;
  EXPECT_TRUE(testing::same_tree(model(), *dir_ / "run_b" / "model", &why)) << why;
  EXPECT_TRUE(testing::same_tree(*dir_ / "run_a" / "distant_model",
                                 *dir_ / "run_b" / "distant_model", &why))
      << why;
}

TEST_F(CliModel, PretrainSkipsSupervisedPhase) {
  const auto o = run_cli({"pretrain", "--config", (*dir_ / "data" / "run.cfg").string(),
                          "-o", (*dir_ / "pre").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.err.find("supervised best"), std::string::npos);
  EXPECT_TRUE(fs::exists(*dir_ / "pre" / "distant_model" / "manifest.txt"));
}

TEST_F(CliModel, BadArchExitsTwo) {
  const auto o = run_cli({"train", "--config", (*dir_ / "data" / "run.cfg").string(),
                          "--set", "arch=L9", "-o", (*dir_ / "bad").string()});
  EXPECT_EQ(o.code, cli::kInputError);
  EXPECT_NE(o.err.find("L9"), std::string::npos);
}

TEST_F(CliModel, PredictSumsToOne) {
  ASSERT_EQ(first_->code, 0);
  write_file(*dir_ / "in.txt", "pos0 k0t0 w1 w2\nneg1 w3\nnothing here\n");
  const auto o = run_cli({"predict", "--model", model().string(), (*dir_ / "in.txt").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = lines(o.out);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    std::istringstream in(row);
    std::string label;
    double a = 0, b = 0, c = 0;
    in >> label >> a >> b >> c;
    EXPECT_TRUE(parse_sentiment(label).has_value()) << row;
    EXPECT_NEAR(a + b + c, 1.0, 2e-4) << row;
  }
  write_file(*dir_ / "none.txt", "");
  const auto e = run_cli({"predict", "--model", model().string(), (*dir_ / "none.txt").string()});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "");
  EXPECT_EQ(run_cli({"predict", "--model", (*dir_ / "nope").string(),
                     (*dir_ / "in.txt").string()})
                .code,
            cli::kInputError);
}

TEST_F(CliModel, EvaluateMatchesLibraryScore) {
  ASSERT_EQ(first_->code, 0);
  const auto o = run_cli({"evaluate", "--model", model().string(), bundle_->train.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const Model m = load_model(model());
  const auto gold = encode_examples(read_supervised_tsv(bundle_->train, "en"), m.vocab,
                                    m.arch.n_max);
  std::ostringstream expected;
  write_report(expected, evaluate(m.params, m.arch, gold));
  EXPECT_EQ(o.out, expected.str());
  const auto last = lines(o.out).back();
  const double score = std::stod(last.substr(last.find('=') + 1));
  EXPECT_GE(score, 0.0);
  EXPECT_LE(score, 1.0);

  write_file(*dir_ / "bad.tsv", "1\tpositive\tok\n2\tgreat\tno\n");
  const auto bad = run_cli({"evaluate", "--model", model().string(), (*dir_ / "bad.tsv").string()});
  EXPECT_EQ(bad.code, cli::kInputError);
  EXPECT_NE(bad.err.find(":2:"), std::string::npos) << bad.err;
}

TEST_F(CliModel, ProjectEmbeddings) {
  ASSERT_EQ(first_->code, 0);
  write_file(*dir_ / "tokens.txt", "pos0\nneg0\npos1\nneg1\n");
  const auto o = run_cli({"project-embeddings", "--model", model().string(),
                          (*dir_ / "tokens.txt").string(), "--pair", "pos0,pos0"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = lines(o.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].substr(0, 5), "pos0\t");
  EXPECT_EQ(rows[4], "cosine\tpos0\tpos0\t1.0000");

  const auto u = run_cli({"project-embeddings", "--model", model().string(), "--pair",
                          "pos0,zzzz"});
  EXPECT_EQ(u.code, cli::kInputError);
  EXPECT_NE(u.err.find("zzzz"), std::string::npos);
  EXPECT_EQ(u.out, "");

  const auto s = run_cli({"project-embeddings", "--embeddings",
                          (*dir_ / "run_a" / "embeddings.bin").string(), "--vocab",
                          (*dir_ / "run_a" / "vocab.tsv").string(), "--pair",
                          "pos0,neg0"});
  EXPECT_EQ(s.code, 0) << s.err;
}

TEST(Cli, ProjectCollinearRows) {
  const auto dir = testing::scratch_dir("cli_project");
  const auto vocab = Vocabulary::build(std::vector<TokenSequence>{{"a", "b", "c"}}, 1);
  vocab.save(dir / "vocab.tsv");
  EmbeddingTable t(vocab.size(), 3);
  for (TokenId id = 2; id < 5; ++id) {
    const float s = static_cast<float>(id);
    t(id, 0) = s;
    t(id, 1) = -2 * s;
    t(id, 2) = 0.5f * s;
  }
  save_embeddings_bin(dir / "emb.bin", t);
  write_file(dir / "tokens.txt", "a\nb\nc\n");
  const auto o = run_cli({"project-embeddings", "--embeddings", (dir / "emb.bin").string(),
                          "--vocab", (dir / "vocab.tsv").string(),
                          (dir / "tokens.txt").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const auto& row : lines(o.out)) {
    const double y = std::stod(row.substr(row.rfind('\t') + 1));
    EXPECT_NEAR(y, 0.0, 1e-6) << row;
  }
  write_file(dir / "unknown.txt", "a\nb\nmystery\n");
  const auto u = run_cli({"project-embeddings", "--embeddings", (dir / "emb.bin").string(),
                          "--vocab", (dir / "vocab.tsv").string(),
                          (dir / "unknown.txt").string()});
  EXPECT_EQ(u.code, cli::kInputError);
  EXPECT_NE(u.err.find("mystery"), std::string::npos);
}

}  // namespace
}  // namespace sentcnn
