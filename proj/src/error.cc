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

#include "ghnorth/error.h"

namespace ghnorth {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kTruncatedData: return "TruncatedData";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kStructureMismatch: return "StructureMismatch";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnsupportedRank: return "UnsupportedRank";
    case ErrorCode::kChannelTooShort: return "ChannelTooShort";
    case ErrorCode::kTooFewChannels: return "TooFewChannels";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kNonFinite: return "NonFinite";
  }
  return "Unknown";
}

ErrorClass ClassOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kChannelTooShort:
    case ErrorCode::kTooFewChannels:
    case ErrorCode::kShapeError:
    case ErrorCode::kDegenerateInput:
    case ErrorCode::kNonFinite:
      return ErrorClass::kNumerical;
    default:
      return ErrorClass::kData;
  }
}

void Error::Rethrow(std::string_view context) const {
  // what() already carries the code name; strip it so it is not repeated.
  std::string_view msg = what();
  const std::string_view prefix = ErrorCodeName(code_);
  if (msg.substr(0, prefix.size()) == prefix) msg.remove_prefix(prefix.size() + 2);
  throw Error(code_, std::string(context) + ": " + std::string(msg));
}

}  // namespace ghnorth
