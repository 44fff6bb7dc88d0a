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

#ifndef GHNORTH_CHECKPOINT_IO_H_
#define GHNORTH_CHECKPOINT_IO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghnorth/tensor.h"

namespace ghnorth {

enum class LayerKind { kConv, kLinear, kNorm, kBias, kOther };

std::string_view LayerKindName(LayerKind kind);
std::optional<LayerKind> ParseLayerKind(std::string_view name);

// Conv and linear weights are the only tensors post-processing touches.
inline bool IsWeightKind(LayerKind kind) {
  return kind == LayerKind::kConv || kind == LayerKind::kLinear;
}

struct TensorMeta {
  std::string name;
  Shape shape;
  LayerKind kind = LayerKind::kOther;
  std::uint64_t depth = 0;   // layer ordinal compared against the start layer
  std::uint64_t offset = 0;  // bytes from the start of the data section
  std::uint64_t length = 0;  // element count

  friend bool operator==(const TensorMeta&, const TensorMeta&) = default;
};

struct CheckpointEntry {
  TensorMeta meta;
  Tensor tensor;

  friend bool operator==(const CheckpointEntry&, const CheckpointEntry&) = default;
};

struct Checkpoint {
  static constexpr std::uint32_t kFormatVersion = 1;

  std::uint32_t version = kFormatVersion;
  std::vector<CheckpointEntry> entries;

  // Appends a tensor, assigning its canonical offset and length.
  void Add(std::string name, LayerKind kind, std::uint64_t depth, Tensor tensor);

  const CheckpointEntry* Find(std::string_view name) const;

  // Returns a description of the first violated invariant, if any: unique
  // names, non-decreasing depth, meta/tensor shape agreement, canonical
  // contiguous offsets.
  std::optional<std::string> CheckInvariants() const;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Binary container, all integers little-endian:
//
//   "GHNP" | version u32 | header_len u64 | JSON header (header_len bytes)
//   | zero padding to an 8-byte boundary | f32 LE tensor data, header order
//
// The header is {"tensors":[{depth, kind, length, name, offset, shape}...]}
// serialized compactly with keys sorted, so equal checkpoints produce equal
// bytes. Offsets are relative to the start of the data section.
Checkpoint ReadCheckpoint(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> WriteCheckpoint(const Checkpoint& checkpoint);

// Test-fixture JSON: [{"name", "shape", "kind", "depth", "data"}, ...].
// Errors: kSchemaError (message carries the JSON path), kShapeMismatch.
Checkpoint ImportJson(std::string_view text);

// Architecture description for baseline initialization: the fixture schema
// without "data". Offsets and lengths are filled in canonically.
std::vector<TensorMeta> ImportArchSpec(std::string_view text);

}  // namespace ghnorth

#endif  // GHNORTH_CHECKPOINT_IO_H_
