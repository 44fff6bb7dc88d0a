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

#ifndef GHNORTH_STATS_H_
#define GHNORTH_STATS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ghnorth/tensor.h"
#include "ghnorth/tensor_ops.h"

namespace ghnorth {

// K x K Pearson correlation between output channels.
struct CorrelationMatrix {
  std::int64_t k = 0;
  std::vector<double> values;  // row-major

  double at(std::int64_t i, std::int64_t j) const { return values[i * k + j]; }
};

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;  // counts.size() == bin_edges.size() - 1
};

// Pearson correlation between channels (rows of the K x CHW view),
// accumulated in f64. A channel with zero variance correlates 0 with every
// other channel; the diagonal is always 1. Entries are clamped to [-1, 1].
//
// Errors: kUnsupportedRank unless rank 2 or 4; kChannelTooShort if CHW < 2.
CorrelationMatrix ChannelCorrelation(const Tensor& w);
CorrelationMatrix ChannelCorrelation(std::span<const double> values, ChannelView view);

// Upper-triangle off-diagonal entries, row by row.
std::vector<double> OffDiagonal(const CorrelationMatrix& r);

// Population standard deviation of the off-diagonal entries.
// Errors: kTooFewChannels when k < 2.
double CorrelationStd(const CorrelationMatrix& r);

// Mean |r_ij| over the off-diagonal entries. Errors: kTooFewChannels.
double MeanAbsOffDiagonal(const CorrelationMatrix& r);

// Equal-width bins over [-1, 1] of the off-diagonal entries; 1.0 lands in the
// last bin. Errors: kTooFewChannels; kShapeError when bins < 1.
Histogram CorrelationHistogram(const CorrelationMatrix& r, int bins);

}  // namespace ghnorth

#endif  // GHNORTH_STATS_H_
