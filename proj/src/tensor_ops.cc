/* Copyright 2026 The ghnorth Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ghnorth/tensor_ops.h"

#include <string>

#include "ghnorth/error.h"

namespace ghnorth {

ChannelView ChannelViewOf(std::span<const std::int64_t> shape) {
  if (shape.size() != 2 && shape.size() != 4) {
    throw Error(ErrorCode::kUnsupportedRank,
                "expected rank 2 or 4, got rank " + std::to_string(shape.size()));
  }
  ChannelView v;
  v.channels = shape[0];
  v.channel_size = 1;
  for (std::size_t i = 1; i < shape.size(); ++i) v.channel_size *= shape[i];
  return v;
}

Matricized Matricize(std::span<const double> values,
                     std::span<const std::int64_t> shape) {
  const ChannelView view = ChannelViewOf(shape);
  const std::int64_t k = view.channels;
  const std::int64_t chw = view.channel_size;
  if (static_cast<std::int64_t>(values.size()) != k * chw) {
    throw Error(ErrorCode::kShapeMismatch, "value count does not match shape");
  }

  Matricized m;
  m.original_shape.assign(shape.begin(), shape.end());
  m.transposed = k < chw;
  if (!m.transposed) {
    m.rows = k;
    m.cols = chw;
    m.data.assign(values.begin(), values.end());
    return m;
  }
  m.rows = chw;
  m.cols = k;
  m.data.resize(values.size());
  for (std::int64_t r = 0; r < k; ++r) {
    for (std::int64_t c = 0; c < chw; ++c) {
      m.data[c * k + r] = values[r * chw + c];
    }
  }
  return m;
}

Matricized Matricize(const Tensor& w) {
  const std::span<const float> src = w.data();
  std::vector<double> values(src.begin(), src.end());
  return Matricize(values, w.shape());
}

std::vector<double> DematricizeValues(const Matricized& m) {
  if (!m.transposed) return m.data;
  // Stored as CHW x K; the tensor layout is K x CHW.
  std::vector<double> out(m.data.size());
  for (std::int64_t r = 0; r < m.rows; ++r) {
    for (std::int64_t c = 0; c < m.cols; ++c) {
      out[c * m.rows + r] = m.data[r * m.cols + c];
    }
  }
  return out;
}

Tensor Dematricize(const Matricized& m) {
  const std::vector<double> values = DematricizeValues(m);
  std::vector<float> data(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    data[i] = static_cast<float>(values[i]);
  }
  return Tensor(m.original_shape, std::move(data));
}

}  // namespace ghnorth
