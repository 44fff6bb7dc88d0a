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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ghnorth/error.h"
#include "test_util.h"

namespace ghnorth {
namespace {

Tensor Iota(const Shape& shape) {
  std::vector<float> data(static_cast<std::size_t>(NumElements(shape)));
  std::iota(data.begin(), data.end(), 0.0f);
  return Tensor(shape, std::move(data));
}

TEST(MatricizeTest, WideConvIsTransposed) {
  const Matricized m = Matricize(Iota({64, 3, 7, 7}));
  EXPECT_EQ(m.rows, 147);
  EXPECT_EQ(m.cols, 64);
  EXPECT_TRUE(m.transposed);
}

TEST(MatricizeTest, TallConvIsNotTransposed) {
  const Matricized m = Matricize(Iota({512, 256, 1, 1}));
  EXPECT_EQ(m.rows, 512);
  EXPECT_EQ(m.cols, 256);
  EXPECT_FALSE(m.transposed);
}

TEST(MatricizeTest, SquareKeepsLayout) {
  const Matricized m = Matricize(Tensor({2, 2}, {1, 2, 3, 4}));
  EXPECT_FALSE(m.transposed);
  EXPECT_EQ(m.data, (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(m.at(1, 0), 3.0);
}

TEST(MatricizeTest, RejectsRankOneAndThree) {
  for (const Shape& s : {Shape{5}, Shape{2, 3, 4}}) {
    try {
      Matricize(Tensor::Zeros(s));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnsupportedRank);
    }
  }
}

TEST(DematricizeTest, TransposedIndexArithmetic) {
  // Enumerate every position: element (k,c,h,w) of the tensor must equal
  // matrix element (c*49 + h*7 + w, k).
  std::vector<double> values(147 * 64);
  std::iota(values.begin(), values.end(), 0.0);
  Matricized m;
  m.rows = 147;
  m.cols = 64;
  m.data = values;
  m.transposed = true;
  m.original_shape = {64, 3, 7, 7};
  const Tensor t = Dematricize(m);
  const auto d = t.data();
  for (int k = 0; k < 64; ++k) {
    for (int c = 0; c < 3; ++c) {
      for (int h = 0; h < 7; ++h) {
        for (int w = 0; w < 7; ++w) {
          const std::size_t flat = ((k * 3 + c) * 7 + h) * 7 + w;
          const std::size_t row = c * 49 + h * 7 + w;
          ASSERT_EQ(d[flat], static_cast<float>(values[row * 64 + k]));
        }
      }
    }
  }
}

TEST(MatricizeTest, RoundTripProperty) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    Shape shape;
    if (gen() % 2 == 0) {
      shape = {1 + static_cast<std::int64_t>(gen() % 40), 1 + static_cast<std::int64_t>(gen() % 40)};
    } else {
      shape = {1 + static_cast<std::int64_t>(gen() % 16), 1 + static_cast<std::int64_t>(gen() % 8),
               1 + static_cast<std::int64_t>(gen() % 4), 1 + static_cast<std::int64_t>(gen() % 4)};
    }
    const Tensor w = testing::GaussianTensor(shape, gen());
    const Matricized m = Matricize(w);
    ASSERT_GE(m.rows, m.cols);
    ASSERT_EQ(m.rows * m.cols, w.size());
    ASSERT_EQ(Dematricize(m), w);

    std::vector<double> a(w.data().begin(), w.data().end());
    std::vector<double> b = m.data;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    ASSERT_EQ(a, b);
  }
}

TEST(MatricizeTest, ExplicitRoundTrips) {
  for (const Shape& s : {Shape{8, 4, 3, 3}, Shape{4, 8, 3, 3}, Shape{3, 100}}) {
    const Tensor w = testing::GaussianTensor(s, 11);
    EXPECT_EQ(Dematricize(Matricize(w)), w);
  }
}

TEST(ChannelViewTest, RankTwoIsChannelsByInputs) {
  const ChannelView v = ChannelViewOf(Shape{10, 7});
  EXPECT_EQ(v.channels, 10);
  EXPECT_EQ(v.channel_size, 7);
}

}  // namespace
}  // namespace ghnorth
