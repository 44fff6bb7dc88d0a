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

#ifndef GHNORTH_POSTPROCESS_H_
#define GHNORTH_POSTPROCESS_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "ghnorth/checkpoint_io.h"
#include "ghnorth/rng.h"
#include "ghnorth/tensor.h"
#include "ghnorth/tensor_ops.h"

namespace ghnorth {

inline constexpr double kDefaultBeta = 3e-5;

struct PostprocessConfig {
  double beta = kDefaultBeta;     // noise scale, shared by all layers
  std::uint64_t start_layer = 0;  // first depth that gets post-processed
  std::uint64_t seed = 0;
  bool skip_noise = false;
  bool skip_orth = false;
  // Worker threads for per-layer processing; 0 picks hardware concurrency.
  // Results do not depend on this value.
  int threads = 0;
};

// Standard deviation of the noise added to `w`: beta times the spread of
// its channel-correlation distribution. Layers with fewer than two
// channels get zero.
double ConditionalNoiseStd(const Tensor& w, double beta);

// w + N(0, ConditionalNoiseStd(w, beta)) elementwise, in f64 and in the
// tensor's flat order. When the std is zero the input comes back unchanged.
std::vector<double> NoisyValues(const Tensor& w, double beta, RngStream& rng);

// NoisyValues rounded to f32.
Tensor AddConditionalNoise(const Tensor& w, double beta, RngStream& rng);

// Replaces m by gain * Q * sign(diag(R)) from its thin QR, in f64.
Matricized Orthogonalize(Matricized m, double gain = 1.0);

// Matricize, orthogonalize and reshape back.
Tensor OrthogonalReinit(const Tensor& w);

// Noise then orthogonalization for one eligible layer, as configured, before
// the final f32 rounding. The noise stream is keyed by (cfg.seed, name).
std::vector<double> GhnOrthLayerValues(const Tensor& w, std::string_view name,
                                       const PostprocessConfig& cfg);

// Applies GhnOrthLayerValues to every conv/linear tensor with
// depth >= cfg.start_layer; every other tensor is copied unchanged.
// Per-layer errors are rethrown prefixed with the tensor name.
Checkpoint GhnOrth(const Checkpoint& checkpoint, const PostprocessConfig& cfg);

// Gaussian with std sqrt(2 / fan_in), fan_in = C*H*W (rank 4) or C (rank 2).
Tensor HeInit(const Shape& shape, RngStream& rng);

// Standard Gaussian sample orthogonalized like Orthogonalize, times gain.
Tensor SaxeOrthogonalInit(const Shape& shape, double gain, RngStream& rng);

}  // namespace ghnorth

#endif  // GHNORTH_POSTPROCESS_H_
