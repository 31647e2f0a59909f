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
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "sentcnn/config.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/model_io.hpp"
#include "sentcnn/tensor_io.hpp"

namespace sentcnn {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sentcnn_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(TensorIo, LittleEndianLayout) {
  Matrix<float> m(1, 2);
  m(0, 0) = 1.0f;
  m(0, 1) = -2.0f;
  std::stringstream ss;
  write_tensor(ss, m);
  const std::string bytes = ss.str();
  const std::string expected("\x01\x00\x00\x00\x02\x00\x00\x00"
                             "\x00\x00\x80\x3f\x00\x00\x00\xc0",
                             16);
  EXPECT_EQ(bytes, expected);
  EXPECT_EQ(read_tensor(ss), m);
}

TEST(TensorIo, RejectsTruncatedAndTrailing) {
  Matrix<float> m(2, 3, 0.5f);
  std::stringstream ss;
  write_tensor(ss, m);
  const std::string bytes = ss.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 1));
  EXPECT_THROW(read_tensor(truncated), InputError);
  const fs::path dir = scratch_dir("trailing");
  {
    std::ofstream out(dir / "t.bin", std::ios::binary);
    out << bytes << 'x';
  }
  EXPECT_THROW(load_tensor(dir / "t.bin"), InputError);
}

TEST(Config, ParseAndTypedGetters) {
  auto c = KeyValueConfig::parse("# comment\na = 1\nb=2.5\n\nflag = yes\nname = L2\n");
  EXPECT_EQ(c.get_uint("a", 0), 1u);
  EXPECT_DOUBLE_EQ(c.get_double("b", 0), 2.5);
  EXPECT_TRUE(c.get_bool("flag", false));
  EXPECT_EQ(c.get_string("name", ""), "L2");
  EXPECT_EQ(c.get_uint("missing", 7), 7u);
  EXPECT_THROW(c.get_uint("b", 0), InputError);
  EXPECT_THROW(c.require_string("missing"), InputError);
}

TEST(Config, OverridesAndUnknownKeys) {
  auto c = KeyValueConfig::parse("a=1\n");
  c.set_assignment("a=2");
  EXPECT_EQ(c.get_uint("a", 0), 2u);
  EXPECT_THROW(c.set_assignment("novalue"), InputError);
  c.set("x.y", "1");
  EXPECT_NO_THROW(c.check_known({"a"}, {"x."}));
  EXPECT_THROW(c.check_known({"a"}), InputError);
  EXPECT_THROW(KeyValueConfig::parse("just text\n"), InputError);
}

TEST(Config, WriteIsSortedAndReparses) {
  KeyValueConfig c;
  c.set("b", "2");
  c.set("a", "1");
  std::stringstream ss;
  c.write(ss);
  EXPECT_EQ(ss.str(), "a=1\nb=2\n");
  EXPECT_EQ(KeyValueConfig::parse(ss.str()).entries(), c.entries());
}

TEST(ModelIo, RoundTripWithOptimizerState) {
  const auto arch = ArchitectureSpec::preset("L3", 20).with_filters(6);
  std::vector<TokenSequence> corpus = {{"a", "b", "c"}, {"a", "b"}, {"a"}};
  const auto vocab = Vocabulary::build(corpus, 1);
  auto params = build_network(arch, vocab.size(), 5, nullptr, 9);
  AdaDeltaState opt(params);
  std::vector<TokenId> ids = vocab.encode({"a", "b"}, arch.n_max);
  std::vector<LabeledIds> batch = {{ids, 2}};
  opt.step(params, loss_and_grads(params, arch, std::span<const LabeledIds>(batch)).grads);

  const fs::path dir = scratch_dir("model");
  save_model(dir, arch, vocab, params, &opt);
  const Model m = load_model(dir);
  EXPECT_EQ(m.arch, arch);
  EXPECT_EQ(m.vocab, vocab);
  EXPECT_EQ(m.params, params);
  auto restored = load_optimizer_state(dir, m.params);
  ASSERT_TRUE(restored);
  EXPECT_EQ(*restored, opt);
}

TEST(ModelIo, MissingTensorIsAnInputError) {
  const auto arch = ArchitectureSpec::preset("L1", 10).with_filters(3);
  const auto vocab = Vocabulary::build(std::vector<TokenSequence>{{"a"}}, 1);
  const auto params = build_network(arch, vocab.size(), 4, nullptr, 1);
  const fs::path dir = scratch_dir("missing");
  save_model(dir, arch, vocab, params);
  EXPECT_FALSE(load_optimizer_state(dir, params));
  fs::remove(dir / "hidden_w.bin");
  EXPECT_THROW(load_model(dir), InputError);
}

TEST(ModelIo, ShapeMismatchIsRejected) {
  const auto arch = ArchitectureSpec::preset("L1", 10).with_filters(3);
  const auto vocab = Vocabulary::build(std::vector<TokenSequence>{{"a"}}, 1);
  const auto params = build_network(arch, vocab.size(), 4, nullptr, 1);
  const fs::path dir = scratch_dir("shape");
  save_model(dir, arch, vocab, params);
  save_tensor(dir / "softmax_w.bin", Matrix<float>(2, 3));
  EXPECT_THROW(load_model(dir), InputError);
}

}  // namespace
}  // namespace sentcnn
