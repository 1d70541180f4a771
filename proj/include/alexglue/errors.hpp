// Copyright 2026 The alexglue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALEXGLUE_ERRORS_HPP
#define ALEXGLUE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace alexglue {

enum class ErrorCode {
  kInvalidTriangle,
  kZeroSide,
  kInvalidConfiguration,
  kInvalidPiece,
  kInvalidPoint,
  kResolutionTooCoarse,
  kOutOfRange,
  kSpecReferenceError,
  kMultiplicityExceeded,
  kNotApplicable,
  kLiftAmbiguous,
  kInvalidPath,
  kInsufficientSamples,
  kUnknownEntry,
  kSchemaError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidTriangle: return "InvalidTriangle";
    case ErrorCode::kZeroSide: return "ZeroSide";
    case ErrorCode::kInvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::kInvalidPiece: return "InvalidPiece";
    case ErrorCode::kInvalidPoint: return "InvalidPoint";
    case ErrorCode::kResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kSpecReferenceError: return "SpecReferenceError";
    case ErrorCode::kMultiplicityExceeded: return "MultiplicityExceeded";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kLiftAmbiguous: return "LiftAmbiguous";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kUnknownEntry: return "UnknownEntry";
    case ErrorCode::kSchemaError: return "SchemaError";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The code is the
/// machine-readable part; what() carries context for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace alexglue

#endif  // ALEXGLUE_ERRORS_HPP
