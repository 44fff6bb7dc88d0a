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

#ifndef GHNORTH_TENSOR_OPS_H_
#define GHNORTH_TENSOR_OPS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ghnorth/tensor.h"

namespace ghnorth {

// Channel view of a weight tensor: K output channels of CHW values each.
// Rank 2 [K, C] is treated as [K, C, 1, 1].
struct ChannelView {
  std::int64_t channels = 0;      // K
  std::int64_t channel_size = 0;  // C*H*W
};

// Throws kUnsupportedRank for anything other than rank 2 or 4.
ChannelView ChannelViewOf(std::span<const std::int64_t> shape);

// 2D form of a weight tensor used before QR. The K x CHW reshape is
// transposed when K < CHW so that rows >= cols always holds. Values are
// kept in f64; converting from f32 is exact.
struct Matricized {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<double> data;  // row-major, rows * cols
  bool transposed = false;
  Shape original_shape;

  double at(std::int64_t r, std::int64_t c) const { return data[r * cols + c]; }
};

Matricized Matricize(const Tensor& w);
Matricized Matricize(std::span<const double> values,
                     std::span<const std::int64_t> shape);

// Inverse of Matricize, flat values in the original tensor layout.
std::vector<double> DematricizeValues(const Matricized& m);

// Inverse of Matricize, rounded to f32 once.
Tensor Dematricize(const Matricized& m);

}  // namespace ghnorth

#endif  // GHNORTH_TENSOR_OPS_H_
