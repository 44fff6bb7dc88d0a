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

#include "ghnorth/postprocess.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "ghnorth/error.h"
#include "ghnorth/linalg.h"
#include "ghnorth/stats.h"

namespace ghnorth {
namespace {

std::vector<float> RoundToF32(const std::vector<double>& values) {
  std::vector<float> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = static_cast<float>(values[i]);
  return out;
}

void RequireFinite(const Tensor& w) {
  if (!w.AllFinite()) throw Error(ErrorCode::kNonFinite, "tensor holds NaN or Inf");
}

void RequireBeta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be finite and >= 0");
  }
}

std::vector<double> ToDouble(const Tensor& w) {
  return std::vector<double>(w.data().begin(), w.data().end());
}

}  // namespace

double ConditionalNoiseStd(const Tensor& w, double beta) {
  RequireBeta(beta);
  const CorrelationMatrix r = ChannelCorrelation(w);
  if (r.k < 2) return 0.0;
  return beta * CorrelationStd(r);
}

std::vector<double> NoisyValues(const Tensor& w, double beta, RngStream& rng) {
  const double std = ConditionalNoiseStd(w, beta);
  std::vector<double> values = ToDouble(w);
  // Adding +0.0 would turn -0.0 into +0.0, so skip the pass entirely.
  if (std == 0.0) return values;
  for (double& v : values) v += std * rng.Gaussian();
  return values;
}

Tensor AddConditionalNoise(const Tensor& w, double beta, RngStream& rng) {
  return Tensor(w.shape(), RoundToF32(NoisyValues(w, beta, rng)));
}

Matricized Orthogonalize(Matricized m, double gain) {
  linalg::Matrix a(m.rows, m.cols, std::move(m.data));
  const linalg::QrResult qr = linalg::QrDecompose(a);
  linalg::Matrix q = linalg::SignAdjust(qr.q, qr.r);
  if (gain != 1.0) {
    for (double& v : q.mutable_data()) v *= gain;
  }
  m.data = std::move(q).release();
  return m;
}

Tensor OrthogonalReinit(const Tensor& w) {
  return Dematricize(Orthogonalize(Matricize(w)));
}

std::vector<double> GhnOrthLayerValues(const Tensor& w, std::string_view name,
                                       const PostprocessConfig& cfg) {
  RequireFinite(w);
  std::vector<double> values;
  if (cfg.skip_noise) {
    values = ToDouble(w);
  } else {
    RngStream rng(cfg.seed, name);
    values = NoisyValues(w, cfg.beta, rng);
  }
  if (cfg.skip_orth) return values;
  return DematricizeValues(Orthogonalize(Matricize(values, w.shape())));
}

Checkpoint GhnOrth(const Checkpoint& checkpoint, const PostprocessConfig& cfg) {
  RequireBeta(cfg.beta);
  if (cfg.skip_noise && cfg.skip_orth) {
    throw Error(ErrorCode::kInvalidArgument, "skip_noise and skip_orth are mutually exclusive");
  }

  Checkpoint out = checkpoint;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    const TensorMeta& meta = out.entries[i].meta;
    if (IsWeightKind(meta.kind) && meta.depth >= cfg.start_layer) eligible.push_back(i);
  }

  // Each layer owns its RNG substream, so any schedule gives the same bytes.
  std::vector<std::exception_ptr> errors(eligible.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < eligible.size(); t = next++) {
      CheckpointEntry& entry = out.entries[eligible[t]];
      try {
        std::vector<double> values = GhnOrthLayerValues(entry.tensor, entry.meta.name, cfg);
        entry.tensor = Tensor(entry.meta.shape, RoundToF32(values));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };

  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(eligible.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t t = 0; t < eligible.size(); ++t) {
    if (!errors[t]) continue;
    const std::string& name = out.entries[eligible[t]].meta.name;
    try {
      std::rethrow_exception(errors[t]);
    } catch (const Error& e) {
      e.Rethrow(name);
    }
  }
  return out;
}

Tensor HeInit(const Shape& shape, RngStream& rng) {
  const ChannelView view = ChannelViewOf(shape);
  const double std = std::sqrt(2.0 / static_cast<double>(view.channel_size));
  std::vector<float> data(static_cast<std::size_t>(view.channels * view.channel_size));
  for (float& v : data) v = static_cast<float>(std * rng.Gaussian());
  return Tensor(shape, std::move(data));
}

Tensor SaxeOrthogonalInit(const Shape& shape, double gain, RngStream& rng) {
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw Error(ErrorCode::kInvalidArgument, "gain must be finite and > 0");
  }
  const ChannelView view = ChannelViewOf(shape);
  std::vector<double> values(static_cast<std::size_t>(view.channels * view.channel_size));
  for (double& v : values) v = rng.Gaussian();
  return Dematricize(Orthogonalize(Matricize(values, shape), gain));
}

}  // namespace ghnorth
