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

#include <iomanip>
#include <ostream>
#include <string>

#include "sentcnn/error.hpp"

namespace sentcnn {
namespace {

void check_class(std::size_t c) {
  if (c >= kNumClasses) {
    throw InputError("class index " + std::to_string(c) + " out of range");
  }
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void ConfusionMatrix::add(std::size_t gold, std::size_t predicted) {
  ++at(gold, predicted);
}

std::uint64_t& ConfusionMatrix::at(std::size_t gold, std::size_t predicted) {
  check_class(gold);
  check_class(predicted);
  return counts_[gold][predicted];
}

std::uint64_t ConfusionMatrix::at(std::size_t gold,
                                  std::size_t predicted) const {
  check_class(gold);
  check_class(predicted);
  return counts_[gold][predicted];
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t gold) const {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < kNumClasses; ++p) s += at(gold, p);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t g = 0; g < kNumClasses; ++g) s += at(g, predicted);
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t s = 0;
  for (const auto& row : counts_) {
    for (auto v : row) s += v;
  }
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (std::size_t g = 0; g < kNumClasses; ++g) {
    for (std::size_t p = 0; p < kNumClasses; ++p) {
      counts_[g][p] += other.counts_[g][p];
    }
  }
  return *this;
}

ConfusionMatrix accumulate(
    std::span<const std::pair<std::size_t, std::size_t>> gold_predicted) {
  ConfusionMatrix cm;
  for (const auto& [g, p] : gold_predicted) cm.add(g, p);
  return cm;
}

ClassScore class_score(const ConfusionMatrix& cm, std::size_t cls) {
  ClassScore s;
  const std::uint64_t tp = cm.at(cls, cls);
  s.precision = ratio(tp, cm.col_sum(cls));
  s.recall = ratio(tp, cm.row_sum(cls));
  const double pr = s.precision + s.recall;
  s.f1 = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
  return s;
}

double f1_pn(const ConfusionMatrix& cm) {
  const auto neg = class_score(cm, static_cast<std::size_t>(Sentiment::kNegative));
  const auto pos = class_score(cm, static_cast<std::size_t>(Sentiment::kPositive));
  return 0.5 * (neg.f1 + pos.f1);
}

void write_report(std::ostream& out, const ConfusionMatrix& cm) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(4);
  out << "class\tprecision\trecall\tf1\n";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const auto s = class_score(cm, c);
    out << sentiment_name(static_cast<Sentiment>(c)) << '\t' << s.precision
        << '\t' << s.recall << '\t' << s.f1 << '\n';
  }
  out << "confusion\tnegative\tneutral\tpositive\n";
  for (std::size_t g = 0; g < kNumClasses; ++g) {
    out << sentiment_name(static_cast<Sentiment>(g));
    for (std::size_t p = 0; p < kNumClasses; ++p) out << '\t' << cm.at(g, p);
    out << '\n';
  }
  out << "examples=" << cm.total() << '\n';
  out << "f1_pn=" << f1_pn(cm) << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace sentcnn
