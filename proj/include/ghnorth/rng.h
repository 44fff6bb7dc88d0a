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

#ifndef GHNORTH_RNG_H_
#define GHNORTH_RNG_H_

#include <cstdint>
#include <string_view>

namespace ghnorth {

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Deterministic Gaussian stream keyed by (master seed, label).
//
// The generator is fixed so outputs reproduce across builds:
//   state   = Mix64(master_seed ^ Mix64(Fnv1a64(label)))
//   next()  = SplitMix64 step on state
//   uniform = ((next() >> 11) + 0.5) * 2^-53, in (0, 1)
//   normals = Box-Muller on two uniforms, cosine branch first, sine branch
//             cached for the following call.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view label);

  std::uint64_t NextU64();
  double Uniform();
  double Gaussian();

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ghnorth

#endif  // GHNORTH_RNG_H_
