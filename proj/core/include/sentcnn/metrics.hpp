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
#ifndef SENTCNN_METRICS_HPP_
#define SENTCNN_METRICS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>

#include "sentcnn/network.hpp"

namespace sentcnn {

// 3x3 counts; rows are gold classes, columns predicted classes, both in
// (negative, neutral, positive) order.
class ConfusionMatrix {
 public:
  void add(std::size_t gold, std::size_t predicted);
  std::uint64_t& at(std::size_t gold, std::size_t predicted);
  std::uint64_t at(std::size_t gold, std::size_t predicted) const;
  std::uint64_t row_sum(std::size_t gold) const;
  std::uint64_t col_sum(std::size_t predicted) const;
  std::uint64_t total() const;

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> counts_{};
};

ConfusionMatrix accumulate(
    std::span<const std::pair<std::size_t, std::size_t>> gold_predicted);

struct ClassScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Precision, recall and F1 of one class; 0/0 is taken as 0.
ClassScore class_score(const ConfusionMatrix& cm, std::size_t cls);

// Mean of the negative-class and positive-class F1. Neutral counts enter
// only through the precision and recall denominators.
double f1_pn(const ConfusionMatrix& cm);

// Per-class P/R/F1 (4 decimals), the matrix, then "f1_pn=<value>".
void write_report(std::ostream& out, const ConfusionMatrix& cm);

}  // namespace sentcnn

#endif  // SENTCNN_METRICS_HPP_
