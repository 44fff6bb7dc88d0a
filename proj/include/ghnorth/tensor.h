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

#ifndef GHNORTH_TENSOR_H_
#define GHNORTH_TENSOR_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ghnorth {

using Shape = std::vector<std::int64_t>;

// Element count of `shape`. An empty shape has zero elements.
std::int64_t NumElements(std::span<const std::int64_t> shape);

// Dense row-major f32 tensor of rank 1 to 4. The constructor enforces
// positive dimensions and len(data) == product(shape).
class Tensor {
 public:
  Tensor() = default;
  Tensor(Shape shape, std::vector<float> data);

  static Tensor Zeros(Shape shape);

  const Shape& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

  std::span<const float> data() const { return data_; }
  std::span<float> mutable_data() { return data_; }

  bool AllFinite() const;

  // Bitwise equality: shapes equal and every f32 bit pattern identical.
  friend bool operator==(const Tensor& a, const Tensor& b);

 private:
  Shape shape_;
  std::vector<float> data_;
};

}  // namespace ghnorth

#endif  // GHNORTH_TENSOR_H_
