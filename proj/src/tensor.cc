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

#include "ghnorth/tensor.h"

#include <cmath>
#include <cstring>
#include <string>

#include "ghnorth/error.h"

namespace ghnorth {

std::int64_t NumElements(std::span<const std::int64_t> shape) {
  if (shape.empty()) return 0;
  std::int64_t n = 1;
  for (std::int64_t d : shape) n *= d;
  return n;
}

Tensor::Tensor(Shape shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty() || shape_.size() > 4) {
    throw Error(ErrorCode::kUnsupportedRank,
                "rank " + std::to_string(shape_.size()) + " not in [1, 4]");
  }
  for (std::int64_t d : shape_) {
    if (d <= 0) {
      throw Error(ErrorCode::kShapeMismatch,
                  "dimension " + std::to_string(d) + " is not positive");
    }
  }
  if (NumElements(shape_) != static_cast<std::int64_t>(data_.size())) {
    throw Error(ErrorCode::kShapeMismatch,
                "shape holds " + std::to_string(NumElements(shape_)) +
                    " elements but data has " + std::to_string(data_.size()));
  }
}

Tensor Tensor::Zeros(Shape shape) {
  const auto n = static_cast<std::size_t>(NumElements(shape));
  return Tensor(std::move(shape), std::vector<float>(n, 0.0f));
}

bool Tensor::AllFinite() const {
  for (float v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool operator==(const Tensor& a, const Tensor& b) {
  return a.shape_ == b.shape_ && a.data_.size() == b.data_.size() &&
         (a.data_.empty() ||
          std::memcmp(a.data_.data(), b.data_.data(),
                      a.data_.size() * sizeof(float)) == 0);
}

}  // namespace ghnorth
