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
#include "sentcnn/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {
namespace {

ConfusionMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  ConfusionMatrix cm;
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t p = 0; p < 3; ++p) {
      cm.at(g, p) = static_cast<std::uint64_t>(rows[g][p]);
    }
  }
  return cm;
}

TEST(F1pn, HandComputedMatrix) {
  const auto cm = from_rows({{3, 1, 1}, {1, 2, 0}, {0, 1, 4}});
  const auto neg = class_score(cm, 0);
  EXPECT_DOUBLE_EQ(neg.precision, 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(neg.recall, 3.0 / 5.0);
  EXPECT_NEAR(neg.f1, 2.0 / 3.0, 1e-12);
  const auto pos = class_score(cm, 2);
  EXPECT_NEAR(pos.f1, 0.8, 1e-12);
  EXPECT_NEAR(f1_pn(cm), 11.0 / 15.0, 1e-12);
  EXPECT_NEAR(f1_pn(cm), 0.7333, 1e-4);
}

TEST(F1pn, PerfectAndAllNeutral) {
  EXPECT_EQ(f1_pn(from_rows({{5, 0, 0}, {0, 3, 0}, {0, 0, 2}})), 1.0);
  EXPECT_EQ(f1_pn(from_rows({{5, 0, 0}, {0, 0, 0}, {0, 0, 2}})), 1.0);
  EXPECT_EQ(f1_pn(from_rows({{0, 5, 0}, {0, 3, 0}, {0, 2, 0}})), 0.0);
  EXPECT_EQ(f1_pn(ConfusionMatrix{}), 0.0);
}

TEST(F1pn, FuzzMatchesOracleAndStaysInRange) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> count(0, 20);
  std::bernoulli_distribution sparse(0.3);
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::vector<double>> rows(3, std::vector<double>(3));
    for (auto& r : rows) {
      for (auto& v : r) v = sparse(rng) ? 0 : count(rng);
    }
    const double score = f1_pn(from_rows(rows));
    ASSERT_GE(score, 0.0);
    ASSERT_LE(score, 1.0);
    ASSERT_NEAR(score, testing::oracle_f1_pn(rows), 1e-12);
  }
}

TEST(F1pn, SwappingPositiveAndNegativeIsSymmetric) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> count(0, 9);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<double>> rows(3, std::vector<double>(3));
    for (auto& r : rows) {
      for (auto& v : r) v = count(rng);
    }
    auto swapped = rows;
    for (std::size_t g = 0; g < 3; ++g) {
      for (std::size_t p = 0; p < 3; ++p) swapped[2 - g][2 - p] = rows[g][p];
    }
    EXPECT_NEAR(f1_pn(from_rows(rows)), f1_pn(from_rows(swapped)), 1e-12);
  }
}

TEST(F1pn, NeutralDiagonalDoesNotMatter) {
  auto rows = std::vector<std::vector<double>>{{4, 2, 1}, {3, 0, 2}, {1, 1, 5}};
  const double base = f1_pn(from_rows(rows));
  rows[1][1] = 1000;
  EXPECT_EQ(f1_pn(from_rows(rows)), base);
}

TEST(Accumulate, Examples) {
  EXPECT_EQ(accumulate({}), ConfusionMatrix{});
  const std::vector<std::pair<std::size_t, std::size_t>> one = {{2, 2}};
  const auto cm = accumulate(one);
  EXPECT_EQ(cm.at(2, 2), 1u);
  EXPECT_EQ(cm.total(), 1u);
  const std::vector<std::pair<std::size_t, std::size_t>> bad = {{0, 3}};
  EXPECT_THROW(accumulate(bad), InputError);
  ConfusionMatrix m;
  EXPECT_THROW(m.add(3, 0), InputError);
}

TEST(Accumulate, OrderIndependentAndTotals) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> cls(0, 2);
  std::vector<std::pair<std::size_t, std::size_t>> pairs(500);
  for (auto& p : pairs) p = {cls(rng), cls(rng)};
  const auto a = accumulate(pairs);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  EXPECT_EQ(accumulate(pairs), a);
  EXPECT_EQ(a.total(), 500u);
  std::uint64_t rows = 0;
  for (std::size_t c = 0; c < 3; ++c) rows += a.row_sum(c);
  EXPECT_EQ(rows, 500u);
  ConfusionMatrix half = accumulate(std::span(pairs).first(200));
  half += accumulate(std::span(pairs).subspan(200));
  EXPECT_EQ(half, a);
}

TEST(Report, Format) {
  const auto cm = from_rows({{3, 1, 1}, {1, 2, 0}, {0, 1, 4}});
  std::ostringstream out;
  write_report(out, cm);
  EXPECT_EQ(out.str(),
            "class\tprecision\trecall\tf1\n"
            "negative\t0.7500\t0.6000\t0.6667\n"
            "neutral\t0.5000\t0.6667\t0.5714\n"
            "positive\t0.8000\t0.8000\t0.8000\n"
            "confusion\tnegative\tneutral\tpositive\n"
            "negative\t3\t1\t1\n"
            "neutral\t1\t2\t0\n"
            "positive\t0\t1\t4\n"
            "examples=13\n"
            "f1_pn=0.7333\n");
}

}  // namespace
}  // namespace sentcnn
