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

#include "ghnorth/checkpoint_io.h"

#include <bit>
#include <limits>
#include <unordered_set>

#include "ghnorth/error.h"
#include "json.hpp"

namespace ghnorth {
namespace {

using json = nlohmann::json;

constexpr char kMagic[4] = {'G', 'H', 'N', 'P'};
constexpr std::size_t kPreludeSize = 4 + 4 + 8;

std::uint64_t AlignTo8(std::uint64_t n) { return (n + 7) & ~std::uint64_t{7}; }

void PutLe(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t GetLe(std::span<const std::uint8_t> in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[pos + i]} << (8 * i);
  return v;
}

json MetaToJson(const TensorMeta& meta) {
  json j = json::object();
  j["name"] = meta.name;
  j["shape"] = meta.shape;
  j["kind"] = std::string(LayerKindName(meta.kind));
  j["depth"] = meta.depth;
  j["offset"] = meta.offset;
  j["length"] = meta.length;
  return j;
}

[[noreturn]] void Fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Field readers shared by the binary header and the JSON fixtures. `path`
// names the offending field in error messages.
const json& Field(const json& obj, const char* key, const std::string& path,
                  ErrorCode code) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(code, path + "." + key + ": missing");
  return *it;
}

std::uint64_t ReadUnsigned(const json& v, const std::string& path, ErrorCode code) {
  if (!v.is_number_unsigned()) Fail(code, path + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

Shape ReadShape(const json& v, const std::string& path, ErrorCode code) {
  if (!v.is_array()) Fail(code, path + ": expected an array");
  if (v.empty() || v.size() > 4) {
    Fail(code, path + ": rank " + std::to_string(v.size()) + " not in [1, 4]");
  }
  Shape shape;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const std::uint64_t d = ReadUnsigned(v[i], p, code);
    if (d == 0 || d > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
      Fail(code, p + ": dimension must be in [1, 2^31)");
    }
    shape.push_back(static_cast<std::int64_t>(d));
  }
  std::uint64_t count = 1;
  for (std::int64_t d : shape) {
    count *= static_cast<std::uint64_t>(d);
    if (count > (std::uint64_t{1} << 40)) Fail(code, path + ": too many elements");
  }
  return shape;
}

LayerKind ReadKind(const json& v, const std::string& path, ErrorCode code) {
  if (!v.is_string()) Fail(code, path + ": expected a string");
  auto kind = ParseLayerKind(v.get_ref<const std::string&>());
  if (!kind) Fail(code, path + ": unknown kind \"" + v.get<std::string>() + "\"");
  return *kind;
}

std::string ReadName(const json& v, const std::string& path, ErrorCode code) {
  if (!v.is_string()) Fail(code, path + ": expected a string");
  std::string name = v.get<std::string>();
  if (name.empty()) Fail(code, path + ": empty name");
  return name;
}

void RejectUnknownKeys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& path, ErrorCode code) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) Fail(code, path + "." + it.key() + ": unknown field");
  }
}

// Parses the fixture / arch-spec layout. `with_data` selects the fixture form.
struct ParsedRecord {
  TensorMeta meta;
  std::vector<float> data;
};

std::vector<ParsedRecord> ParseRecords(std::string_view text, bool with_data) {
  constexpr ErrorCode kCode = ErrorCode::kSchemaError;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(kCode, std::string("$: ") + e.what());
  }
  if (!doc.is_array()) Fail(kCode, "$: expected an array of tensors");

  std::vector<ParsedRecord> records;
  std::unordered_set<std::string> names;
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "$[" + std::to_string(i) + "]";
    const json& item = doc[i];
    if (!item.is_object()) Fail(kCode, path + ": expected an object");
    if (with_data) {
      RejectUnknownKeys(item, {"name", "shape", "kind", "depth", "data"}, path, kCode);
    } else {
      RejectUnknownKeys(item, {"name", "shape", "kind", "depth"}, path, kCode);
    }

    ParsedRecord rec;
    rec.meta.name = ReadName(Field(item, "name", path, kCode), path + ".name", kCode);
    rec.meta.shape = ReadShape(Field(item, "shape", path, kCode), path + ".shape", kCode);
    rec.meta.kind = ReadKind(Field(item, "kind", path, kCode), path + ".kind", kCode);
    rec.meta.depth = ReadUnsigned(Field(item, "depth", path, kCode), path + ".depth", kCode);
    rec.meta.length = static_cast<std::uint64_t>(NumElements(rec.meta.shape));
    rec.meta.offset = offset;
    offset += rec.meta.length * sizeof(float);

    if (!names.insert(rec.meta.name).second) {
      Fail(kCode, path + ".name: duplicate tensor name \"" + rec.meta.name + "\"");
    }
    if (!records.empty() && rec.meta.depth < records.back().meta.depth) {
      Fail(kCode, path + ".depth: depth decreases relative to the previous tensor");
    }

    if (with_data) {
      const json& data = Field(item, "data", path, kCode);
      if (!data.is_array()) Fail(kCode, path + ".data: expected an array");
      if (data.size() != rec.meta.length) {
        Fail(ErrorCode::kShapeMismatch,
             path + ".data: " + std::to_string(data.size()) +
                 " values for shape with " + std::to_string(rec.meta.length) + " elements");
      }
      rec.data.reserve(data.size());
      for (std::size_t j = 0; j < data.size(); ++j) {
        if (!data[j].is_number()) {
          Fail(kCode, path + ".data[" + std::to_string(j) + "]: expected a number");
        }
        rec.data.push_back(static_cast<float>(data[j].get<double>()));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::string_view LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kLinear: return "linear";
    case LayerKind::kNorm: return "norm";
    case LayerKind::kBias: return "bias";
    case LayerKind::kOther: return "other";
  }
  return "other";
}

std::optional<LayerKind> ParseLayerKind(std::string_view name) {
  for (LayerKind k : {LayerKind::kConv, LayerKind::kLinear, LayerKind::kNorm,
                      LayerKind::kBias, LayerKind::kOther}) {
    if (LayerKindName(k) == name) return k;
  }
  return std::nullopt;
}

void Checkpoint::Add(std::string name, LayerKind kind, std::uint64_t depth,
                     Tensor tensor) {
  TensorMeta meta;
  meta.name = std::move(name);
  meta.shape = tensor.shape();
  meta.kind = kind;
  meta.depth = depth;
  meta.length = static_cast<std::uint64_t>(tensor.size());
  meta.offset = entries.empty() ? 0
                                : entries.back().meta.offset +
                                      entries.back().meta.length * sizeof(float);
  entries.push_back({std::move(meta), std::move(tensor)});
}

const CheckpointEntry* Checkpoint::Find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.meta.name == name) return &e;
  }
  return nullptr;
}

std::optional<std::string> Checkpoint::CheckInvariants() const {
  std::unordered_set<std::string_view> names;
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const TensorMeta& m = entries[i].meta;
    const std::string where = "tensors[" + std::to_string(i) + "] (" + m.name + ")";
    if (m.name.empty()) return where + ": empty name";
    if (!names.insert(m.name).second) return where + ": duplicate name";
    if (i > 0 && m.depth < entries[i - 1].meta.depth) return where + ": depth decreases";
    if (m.shape != entries[i].tensor.shape()) return where + ": shape differs from tensor";
    if (m.length != static_cast<std::uint64_t>(NumElements(m.shape))) {
      return where + ": length differs from product(shape)";
    }
    if (m.offset != offset) return where + ": offset is not canonical";
    offset += m.length * sizeof(float);
  }
  return std::nullopt;
}

std::vector<std::uint8_t> WriteCheckpoint(const Checkpoint& checkpoint) {
  json tensors = json::array();
  for (const auto& e : checkpoint.entries) tensors.push_back(MetaToJson(e.meta));
  json header = json::object();
  header["tensors"] = std::move(tensors);
  const std::string header_text = header.dump();

  std::vector<std::uint8_t> out;
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  PutLe(out, checkpoint.version, 4);
  PutLe(out, header_text.size(), 8);
  out.insert(out.end(), header_text.begin(), header_text.end());
  out.resize(AlignTo8(out.size()), 0);
  for (const auto& e : checkpoint.entries) {
    for (float v : e.tensor.data()) PutLe(out, std::bit_cast<std::uint32_t>(v), 4);
  }
  return out;
}

Checkpoint ReadCheckpoint(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin(),
                                      [](char a, std::uint8_t b) {
                                        return static_cast<std::uint8_t>(a) == b;
                                      })) {
    Fail(ErrorCode::kBadMagic, "magic: expected \"GHNP\"");
  }
  if (bytes.size() < kPreludeSize) Fail(ErrorCode::kCorruptHeader, "prelude: file too short");

  Checkpoint c;
  c.version = static_cast<std::uint32_t>(GetLe(bytes, 4, 4));
  if (c.version != Checkpoint::kFormatVersion) {
    Fail(ErrorCode::kUnsupportedVersion, "version: " + std::to_string(c.version));
  }
  const std::uint64_t header_len = GetLe(bytes, 8, 8);
  if (header_len > bytes.size() - kPreludeSize) {
    Fail(ErrorCode::kCorruptHeader,
         "header_length: " + std::to_string(header_len) + " exceeds file size");
  }

  constexpr ErrorCode kCode = ErrorCode::kCorruptHeader;
  json header;
  try {
    header = json::parse(bytes.begin() + kPreludeSize,
                         bytes.begin() + kPreludeSize + static_cast<std::ptrdiff_t>(header_len));
  } catch (const json::parse_error& e) {
    Fail(kCode, std::string("header: ") + e.what());
  }
  if (!header.is_object()) Fail(kCode, "header: expected an object");
  RejectUnknownKeys(header, {"tensors"}, "header", kCode);
  const json& tensors = Field(header, "tensors", "header", kCode);
  if (!tensors.is_array()) Fail(kCode, "header.tensors: expected an array");

  const std::uint64_t data_start = AlignTo8(kPreludeSize + header_len);
  if (data_start > bytes.size()) Fail(ErrorCode::kTruncatedData, "padding: file ends early");
  for (std::uint64_t i = kPreludeSize + header_len; i < data_start; ++i) {
    if (bytes[i] != 0) Fail(kCode, "padding: non-zero byte");
  }
  const std::uint64_t data_size = bytes.size() - data_start;

  std::unordered_set<std::string> names;
  std::uint64_t expected_offset = 0;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const std::string path = "header.tensors[" + std::to_string(i) + "]";
    const json& item = tensors[i];
    if (!item.is_object()) Fail(kCode, path + ": expected an object");
    RejectUnknownKeys(item, {"name", "shape", "kind", "depth", "offset", "length"}, path,
                      kCode);
    TensorMeta meta;
    meta.name = ReadName(Field(item, "name", path, kCode), path + ".name", kCode);
    meta.shape = ReadShape(Field(item, "shape", path, kCode), path + ".shape", kCode);
    meta.kind = ReadKind(Field(item, "kind", path, kCode), path + ".kind", kCode);
    meta.depth = ReadUnsigned(Field(item, "depth", path, kCode), path + ".depth", kCode);
    meta.offset = ReadUnsigned(Field(item, "offset", path, kCode), path + ".offset", kCode);
    meta.length = ReadUnsigned(Field(item, "length", path, kCode), path + ".length", kCode);

    if (meta.length != static_cast<std::uint64_t>(NumElements(meta.shape))) {
      Fail(kCode, path + ".length: does not equal product(shape)");
    }
    if (!names.insert(meta.name).second) {
      Fail(kCode, path + ".name: duplicate tensor name \"" + meta.name + "\"");
    }
    if (!c.entries.empty() && meta.depth < c.entries.back().meta.depth) {
      Fail(kCode, path + ".depth: depth decreases relative to the previous tensor");
    }
    if (meta.offset != expected_offset) {
      Fail(kCode, path + ".offset: expected " + std::to_string(expected_offset));
    }
    const std::uint64_t nbytes = meta.length * sizeof(float);
    if (meta.offset > data_size || nbytes > data_size - meta.offset) {
      Fail(ErrorCode::kTruncatedData,
           path + " (" + meta.name + "): data section holds " + std::to_string(data_size) +
               " bytes, tensor needs up to byte " + std::to_string(meta.offset + nbytes));
    }
    expected_offset += nbytes;

    std::vector<float> data(meta.length);
    const std::size_t base = data_start + meta.offset;
    for (std::size_t j = 0; j < data.size(); ++j) {
      data[j] = std::bit_cast<float>(static_cast<std::uint32_t>(GetLe(bytes, base + 4 * j, 4)));
    }
    Shape shape = meta.shape;
    c.entries.push_back({std::move(meta), Tensor(std::move(shape), std::move(data))});
  }
  if (expected_offset != data_size) {
    Fail(kCode, "header.tensors: data section has " +
                    std::to_string(data_size - expected_offset) + " trailing bytes");
  }
  return c;
}

Checkpoint ImportJson(std::string_view text) {
  Checkpoint c;
  for (auto& rec : ParseRecords(text, /*with_data=*/true)) {
    Shape shape = rec.meta.shape;
    c.entries.push_back({std::move(rec.meta), Tensor(std::move(shape), std::move(rec.data))});
  }
  return c;
}

std::vector<TensorMeta> ImportArchSpec(std::string_view text) {
  std::vector<TensorMeta> metas;
  for (auto& rec : ParseRecords(text, /*with_data=*/false)) metas.push_back(std::move(rec.meta));
  return metas;
}

}  // namespace ghnorth
