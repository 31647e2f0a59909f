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
#ifndef SENTCNN_NNCORE_HPP_
#define SENTCNN_NNCORE_HPP_

// Forward and backward kernels for the convolutional classifier.
//
// Feature maps are stored time-major: a FeatureMap with `length` positions and
// `channels` channels is a Matrix with rows = length and cols = channels, so
// row t holds every channel at position t and a window of h positions is one
// contiguous block of h * channels values.
//
// Dot products accumulate in double regardless of T.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sentcnn/error.hpp"
#include "sentcnn/tensor.hpp"

namespace sentcnn {

template <typename T>
using FeatureMap = Matrix<T>;

// m filters of window h over c input channels. weights(f, j * c + k) is the
// weight of filter f for channel k at window offset j.
template <typename T>
struct FilterBank {
  std::size_t window = 0;
  std::size_t channels = 0;
  Matrix<T> weights;
  std::vector<T> bias;

  FilterBank() = default;
  FilterBank(std::size_t filters, std::size_t window_, std::size_t channels_)
      : window(window_),
        channels(channels_),
        weights(filters, window_ * channels_),
        bias(filters, T{}) {}

  std::size_t filters() const { return weights.rows(); }
  std::size_t fan_in() const { return window * channels; }
  friend bool operator==(const FilterBank&, const FilterBank&) = default;
};

// ---------------------------------------------------------------------------
// Convolution (valid, cross-correlation):
//   out(i, f) = bias[f] + sum_{j<h, k<c} in(i + j, k) * weights(f, j * c + k)

inline std::size_t conv_output_length(std::size_t n, std::size_t h) {
  if (h < 1) throw InputError("filter window must be >= 1");
  if (n < h) throw InputError("input shorter than filter window");
  return n - h + 1;
}

inline std::size_t pool_output_length(std::size_t length, std::size_t window,
                                      std::size_t stride) {
  if (window < 1 || stride < 1) {
    throw InputError("pool window and stride must be >= 1");
  }
  if (length < window) throw InputError("pool window exceeds length");
  return (length - window) / stride + 1;
}

// Transposed weights, (h * c) x m, used by the forward pass.
template <typename T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  }
  return t;
}

template <typename T>
void conv1d_forward(const FeatureMap<T>& in, const FilterBank<T>& fb,
                    const Matrix<T>& weights_t, FeatureMap<T>& out,
                    std::vector<double>& acc) {
  if (in.cols() != fb.channels) {
    throw InputError("conv1d: input has " + std::to_string(in.cols()) +
                     " channels, filters expect " +
                     std::to_string(fb.channels));
  }
  const std::size_t out_len = conv_output_length(in.rows(), fb.window);
  const std::size_t m = fb.filters();
  const std::size_t span_len = fb.fan_in();
  out.resize(out_len, m);
  acc.resize(m);
  for (std::size_t i = 0; i < out_len; ++i) {
    for (std::size_t f = 0; f < m; ++f) acc[f] = static_cast<double>(fb.bias[f]);
    const T* window = in.data() + i * fb.channels;
    for (std::size_t e = 0; e < span_len; ++e) {
      const double x = static_cast<double>(window[e]);
      if (x == 0.0) continue;  // padding and relu zeros
      const T* w = weights_t.data() + e * m;
      for (std::size_t f = 0; f < m; ++f) acc[f] += x * static_cast<double>(w[f]);
    }
    T* o = out.data() + i * m;
    for (std::size_t f = 0; f < m; ++f) o[f] = static_cast<T>(acc[f]);
  }
}

template <typename T>
FeatureMap<T> conv1d(const FeatureMap<T>& in, const FilterBank<T>& fb) {
  FeatureMap<T> out;
  std::vector<double> acc;
  conv1d_forward(in, fb, transpose(fb.weights), out, acc);
  return out;
}

// Accumulates weight and bias gradients into d_weights / d_bias and, when
// d_input is non-null, overwrites *d_input with the input gradient.
template <typename T>
void conv1d_backward_accumulate(const FeatureMap<T>& in, const FilterBank<T>& fb,
                                const FeatureMap<T>& d_out,
                                Matrix<T>& d_weights, std::vector<T>& d_bias,
                                FeatureMap<T>* d_input,
                                std::vector<double>& scratch) {
  const std::size_t m = fb.filters();
  const std::size_t span_len = fb.fan_in();
  if (in.cols() != fb.channels ||
      d_out.rows() != conv_output_length(in.rows(), fb.window) ||
      d_out.cols() != m || !d_weights.same_shape(fb.weights) ||
      d_bias.size() != m) {
    throw InputError("conv1d backward: shape mismatch with cached forward");
  }
  if (d_input != nullptr) scratch.assign(in.size(), 0.0);
  for (std::size_t i = 0; i < d_out.rows(); ++i) {
    const T* window = in.data() + i * fb.channels;
    for (std::size_t f = 0; f < m; ++f) {
      const T g = d_out(i, f);
      if (g == T{}) continue;
      d_bias[f] += g;
      T* dw = d_weights.data() + f * span_len;
      for (std::size_t e = 0; e < span_len; ++e) dw[e] += g * window[e];
      if (d_input != nullptr) {
        const T* w = fb.weights.data() + f * span_len;
        double* dx = scratch.data() + i * fb.channels;
        const double gd = static_cast<double>(g);
        for (std::size_t e = 0; e < span_len; ++e) {
          dx[e] += gd * static_cast<double>(w[e]);
        }
      }
    }
  }
  if (d_input != nullptr) {
    d_input->resize(in.rows(), in.cols());
    std::transform(scratch.begin(), scratch.end(), d_input->data(),
                   [](double v) { return static_cast<T>(v); });
  }
}

template <typename T>
struct ConvGrads {
  FeatureMap<T> d_input;
  Matrix<T> d_weights;
  std::vector<T> d_bias;
};

template <typename T>
ConvGrads<T> conv1d_backward(const FeatureMap<T>& in, const FilterBank<T>& fb,
                             const FeatureMap<T>& d_out) {
  ConvGrads<T> g;
  g.d_weights.resize(fb.weights.rows(), fb.weights.cols());
  g.d_bias.assign(fb.filters(), T{});
  std::vector<double> scratch;
  conv1d_backward_accumulate(in, fb, d_out, g.d_weights, g.d_bias, &g.d_input,
                             scratch);
  return g;
}

// ---------------------------------------------------------------------------
// Max pooling over time with window w and stride st; partial trailing
// windows are dropped. argmax(i, f) is the source position, lowest on ties.

template <typename T>
struct PoolResult {
  FeatureMap<T> out;
  Matrix<std::uint32_t> argmax;
  std::size_t input_length = 0;
};

template <typename T>
void maxpool_forward(const FeatureMap<T>& in, std::size_t window,
                     std::size_t stride, PoolResult<T>& res) {
  const std::size_t out_len = pool_output_length(in.rows(), window, stride);
  const std::size_t ch = in.cols();
  res.out.resize(out_len, ch);
  res.argmax.resize(out_len, ch);
  res.input_length = in.rows();
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t start = i * stride;
    T* o = res.out.data() + i * ch;
    std::uint32_t* a = res.argmax.data() + i * ch;
    const T* first = in.data() + start * ch;
    std::copy(first, first + ch, o);
    std::fill(a, a + ch, static_cast<std::uint32_t>(start));
    for (std::size_t t = start + 1; t < start + window; ++t) {
      const T* row = in.data() + t * ch;
      for (std::size_t f = 0; f < ch; ++f) {
        if (row[f] > o[f]) {
          o[f] = row[f];
          a[f] = static_cast<std::uint32_t>(t);
        }
      }
    }
  }
}

template <typename T>
PoolResult<T> maxpool(const FeatureMap<T>& in, std::size_t window,
                      std::size_t stride) {
  PoolResult<T> res;
  maxpool_forward(in, window, stride, res);
  return res;
}

template <typename T>
void maxpool_backward(const PoolResult<T>& fwd, const FeatureMap<T>& d_out,
                      FeatureMap<T>& d_input) {
  if (!d_out.same_shape(fwd.out)) {
    throw InputError("maxpool backward: shape mismatch with cached forward");
  }
  const std::size_t ch = d_out.cols();
  d_input.resize(fwd.input_length, ch);
  for (std::size_t i = 0; i < d_out.rows(); ++i) {
    for (std::size_t f = 0; f < ch; ++f) {
      d_input(fwd.argmax(i, f), f) += d_out(i, f);
    }
  }
}

template <typename T>
FeatureMap<T> maxpool_backward(const PoolResult<T>& fwd,
                               const FeatureMap<T>& d_out) {
  FeatureMap<T> d_input;
  maxpool_backward(fwd, d_out, d_input);
  return d_input;
}

// ---------------------------------------------------------------------------
// relu

template <typename T>
void relu_inplace(FeatureMap<T>& x) {
  for (T& v : x.flat()) v = v > T{} ? v : T{};
}

template <typename T>
FeatureMap<T> relu(FeatureMap<T> x) {
  relu_inplace(x);
  return x;
}

// Masks d_out in place by (forward input > 0). `forward` may be either the
// relu input or its output; both have the same positive support.
template <typename T>
void relu_backward_inplace(const FeatureMap<T>& forward, FeatureMap<T>& d_out) {
  if (!forward.same_shape(d_out)) {
    throw InputError("relu backward: shape mismatch with cached forward");
  }
  auto f = forward.flat();
  auto g = d_out.flat();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(f[i] > T{})) g[i] = T{};
  }
}

template <typename T>
FeatureMap<T> relu_backward(const FeatureMap<T>& forward, FeatureMap<T> d_out) {
  relu_backward_inplace(forward, d_out);
  return d_out;
}

// ---------------------------------------------------------------------------
// Fully connected layer y = W x + b, W is out x in.

template <typename T>
void dense_forward(const Matrix<T>& w, std::span<const T> b,
                   std::span<const T> x, std::span<T> y) {
  if (w.cols() != x.size() || w.rows() != y.size() || b.size() != y.size()) {
    throw InputError("dense: shape mismatch");
  }
  for (std::size_t r = 0; r < w.rows(); ++r) {
    double acc = static_cast<double>(b[r]);
    const T* row = w.data() + r * w.cols();
    for (std::size_t c = 0; c < x.size(); ++c) {
      acc += static_cast<double>(row[c]) * static_cast<double>(x[c]);
    }
    y[r] = static_cast<T>(acc);
  }
}

// Accumulates dW += dy x^T and db += dy; writes dx = W^T dy when non-empty.
template <typename T>
void dense_backward_accumulate(const Matrix<T>& w, std::span<const T> x,
                               std::span<const T> dy, Matrix<T>& d_w,
                               std::span<T> d_b, std::span<T> dx,
                               std::vector<double>& scratch) {
  if (w.cols() != x.size() || w.rows() != dy.size() || !d_w.same_shape(w) ||
      d_b.size() != dy.size() || (!dx.empty() && dx.size() != x.size())) {
    throw InputError("dense backward: shape mismatch with cached forward");
  }
  if (!dx.empty()) scratch.assign(x.size(), 0.0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const T g = dy[r];
    if (g == T{}) continue;
    d_b[r] += g;
    T* dwr = d_w.data() + r * w.cols();
    for (std::size_t c = 0; c < x.size(); ++c) dwr[c] += g * x[c];
    if (!dx.empty()) {
      const T* row = w.data() + r * w.cols();
      const double gd = static_cast<double>(g);
      for (std::size_t c = 0; c < x.size(); ++c) {
        scratch[c] += gd * static_cast<double>(row[c]);
      }
    }
  }
  if (!dx.empty()) {
    for (std::size_t c = 0; c < x.size(); ++c) dx[c] = static_cast<T>(scratch[c]);
  }
}

// ---------------------------------------------------------------------------
// Softmax with cross-entropy against a gold class.

template <typename T>
struct SoftmaxXent {
  std::vector<T> probs;
  double loss = 0.0;
  std::vector<T> dlogits;  // probs - onehot(gold)
};

template <typename T>
SoftmaxXent<T> softmax_xent(std::span<const T> logits, std::size_t gold) {
  const std::size_t k = logits.size();
  if (k == 0 || gold >= k) throw InputError("softmax_xent: gold class out of range");
  double zmax = static_cast<double>(logits[0]);
  for (T z : logits) zmax = std::max(zmax, static_cast<double>(z));
  std::vector<double> e(k);
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    e[j] = std::exp(static_cast<double>(logits[j]) - zmax);
    sum += e[j];
  }
  SoftmaxXent<T> r;
  r.probs.resize(k);
  r.dlogits.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double p = e[j] / sum;
    r.probs[j] = static_cast<T>(p);
    r.dlogits[j] = static_cast<T>(p - (j == gold ? 1.0 : 0.0));
  }
  // -ln p_gold = ln(sum) - (z_gold - zmax), exact even when p_gold underflows.
  r.loss = std::log(sum) - (static_cast<double>(logits[gold]) - zmax);
  return r;
}

template <typename T>
std::vector<T> softmax(std::span<const T> logits) {
  return softmax_xent(logits, 0).probs;
}

}  // namespace sentcnn

#endif  // SENTCNN_NNCORE_HPP_
