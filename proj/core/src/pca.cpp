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
#include <algorithm>
#include <cmath>
#include <numeric>

#include "sentcnn/embed.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {
namespace {

double off_diagonal_norm(const Matrix<double>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

// Flips v so that its largest-magnitude entry (first on ties) is >= 0.
void orient(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(Matrix<double> a, double tol, int max_sweeps) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InputError("jacobi_eigen: matrix must be square");
  Matrix<double> v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  SymmetricEigen result;
  while (result.sweeps < max_sweeps && off_diagonal_norm(a) >= tol) {
    ++result.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p, q) rotation.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    result.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) result.vectors(k, j) = v(k, order[j]);
  }
  return result;
}

Projection2d pca_project_2d(const EmbeddingTable& table,
                            std::span<const TokenId> ids) {
  const std::size_t d = table.cols();
  if (d < 2) throw InputError("PCA projection needs d >= 2");
  std::vector<TokenId> distinct(ids.begin(), ids.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw InputError("PCA projection needs >= 3 distinct ids");
  for (TokenId id : ids) {
    if (id >= table.rows()) throw InputError("token id outside the embedding table");
  }

  const std::size_t n = ids.size();
  std::vector<double> mean(d, 0.0);
  for (TokenId id : ids) {
    for (std::size_t k = 0; k < d; ++k) mean[k] += table(id, k);
  }
  for (double& m : mean) m /= static_cast<double>(n);

  Matrix<double> centered(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      centered(i, k) = static_cast<double>(table(ids[i], k)) - mean[k];
    }
  }
  Matrix<double> cov(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += centered(i, a) * centered(i, b);
      cov(a, b) = cov(b, a) = s / static_cast<double>(n);
    }
  }
  double trace = 0.0;
  for (std::size_t k = 0; k < d; ++k) trace += cov(k, k);
  if (trace <= 0.0) throw InputError("degenerate point set");

  const SymmetricEigen eig = jacobi_eigen(cov);
  Projection2d proj;
  proj.axis1.resize(d);
  proj.axis2.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    proj.axis1[k] = eig.vectors(k, 0);
    proj.axis2[k] = eig.vectors(k, 1);
  }
  orient(proj.axis1);
  orient(proj.axis2);
  proj.variance1 = eig.values[0];
  proj.variance2 = eig.values[1];
  proj.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = 0.0;
    double y = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      x += centered(i, k) * proj.axis1[k];
      y += centered(i, k) * proj.axis2[k];
    }
    proj.points[i] = {x, y};
  }
  return proj;
}

}  // namespace sentcnn
