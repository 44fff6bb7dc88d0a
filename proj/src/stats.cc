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

#include "ghnorth/stats.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghnorth/error.h"

namespace ghnorth {
namespace {

void RequirePairs(const CorrelationMatrix& r) {
  if (r.k < 2) {
    throw Error(ErrorCode::kTooFewChannels,
                "need at least 2 channels, got " + std::to_string(r.k));
  }
}

}  // namespace

CorrelationMatrix ChannelCorrelation(std::span<const double> values, ChannelView view) {
  const std::int64_t k = view.channels;
  const std::int64_t n = view.channel_size;
  if (n < 2) {
    throw Error(ErrorCode::kChannelTooShort,
                "channels have " + std::to_string(n) + " element(s), need at least 2");
  }

  // Center each channel and scale it to unit norm; correlations are then
  // plain dot products. Zero-variance channels stay all-zero.
  std::vector<double> unit(values.begin(), values.end());
  std::vector<bool> constant(k, false);
  for (std::int64_t i = 0; i < k; ++i) {
    double* row = unit.data() + i * n;
    double mean = 0.0;
    for (std::int64_t j = 0; j < n; ++j) mean += row[j];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      row[j] -= mean;
      ss += row[j] * row[j];
    }
    if (ss > 0.0) {
      const double inv = 1.0 / std::sqrt(ss);
      for (std::int64_t j = 0; j < n; ++j) row[j] *= inv;
    } else {
      constant[i] = true;
      std::fill(row, row + n, 0.0);
    }
  }

  CorrelationMatrix r;
  r.k = k;
  r.values.assign(static_cast<std::size_t>(k * k), 0.0);
  for (std::int64_t i = 0; i < k; ++i) {
    r.values[i * k + i] = 1.0;
    if (constant[i]) continue;
    const double* a = unit.data() + i * n;
    for (std::int64_t j = i + 1; j < k; ++j) {
      if (constant[j]) continue;
      const double* b = unit.data() + j * n;
      double dot = 0.0;
      for (std::int64_t t = 0; t < n; ++t) dot += a[t] * b[t];
      dot = std::clamp(dot, -1.0, 1.0);
      r.values[i * k + j] = dot;
      r.values[j * k + i] = dot;
    }
  }
  return r;
}

CorrelationMatrix ChannelCorrelation(const Tensor& w) {
  const ChannelView view = ChannelViewOf(w.shape());
  const std::span<const float> src = w.data();
  const std::vector<double> values(src.begin(), src.end());
  return ChannelCorrelation(values, view);
}

std::vector<double> OffDiagonal(const CorrelationMatrix& r) {
  std::vector<double> out;
  if (r.k < 2) return out;
  out.reserve(static_cast<std::size_t>(r.k * (r.k - 1) / 2));
  for (std::int64_t i = 0; i < r.k; ++i) {
    for (std::int64_t j = i + 1; j < r.k; ++j) out.push_back(r.at(i, j));
  }
  return out;
}

double CorrelationStd(const CorrelationMatrix& r) {
  RequirePairs(r);
  const std::vector<double> off = OffDiagonal(r);
  double mean = 0.0;
  for (double v : off) mean += v;
  mean /= static_cast<double>(off.size());
  double ss = 0.0;
  for (double v : off) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(off.size()));
}

double MeanAbsOffDiagonal(const CorrelationMatrix& r) {
  RequirePairs(r);
  const std::vector<double> off = OffDiagonal(r);
  double sum = 0.0;
  for (double v : off) sum += std::abs(v);
  return sum / static_cast<double>(off.size());
}

Histogram CorrelationHistogram(const CorrelationMatrix& r, int bins) {
  RequirePairs(r);
  if (bins < 1) {
    throw Error(ErrorCode::kShapeError, "bins must be >= 1, got " + std::to_string(bins));
  }
  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.bin_edges[i] = -1.0 + 2.0 * i / bins;
  h.counts.assign(bins, 0);
  for (double v : OffDiagonal(r)) {
    auto bin = static_cast<std::int64_t>(std::floor((v + 1.0) * 0.5 * bins));
    h.counts[std::clamp<std::int64_t>(bin, 0, bins - 1)]++;
  }
  return h;
}

}  // namespace ghnorth
