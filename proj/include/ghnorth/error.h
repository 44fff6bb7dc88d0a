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

#ifndef GHNORTH_ERROR_H_
#define GHNORTH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghnorth {

enum class ErrorCode {
  // Checkpoint container and fixture formats.
  kBadMagic,
  kUnsupportedVersion,
  kCorruptHeader,
  kTruncatedData,
  kSchemaError,
  kShapeMismatch,
  kStructureMismatch,
  kIoError,
  kInvalidArgument,
  // Tensor layout.
  kUnsupportedRank,
  // Numerics.
  kChannelTooShort,
  kTooFewChannels,
  kShapeError,
  kDegenerateInput,
  kNonFinite,
};

// Coarse failure class; the CLI maps these onto exit codes.
enum class ErrorClass { kData, kNumerical };

std::string_view ErrorCodeName(ErrorCode code);
ErrorClass ClassOf(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

  // Re-throws with `context` (usually a tensor name) prepended.
  [[noreturn]] void Rethrow(std::string_view context) const;

 private:
  ErrorCode code_;
};

}  // namespace ghnorth

#endif  // GHNORTH_ERROR_H_
