// Copyright 2026 The mockdiff Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mockdiff {

enum class ErrorCode {
  kEmptyCrop,
  kEmptyRegion,
  kEmptyHistogram,
  kParseError,
  kBoundsFormatError,
  kDimensionMismatch,
  kInvalidScreen,
  kRecipeError,
  kInjectionInfeasible,
  kCorpusError,
  kEvalError,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCrop: return "EmptyCrop";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kEmptyHistogram: return "EmptyHistogram";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBoundsFormatError: return "BoundsFormatError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidScreen: return "InvalidScreen";
    case ErrorCode::kRecipeError: return "RecipeError";
    case ErrorCode::kInjectionInfeasible: return "InjectionInfeasible";
    case ErrorCode::kCorpusError: return "CorpusError";
    case ErrorCode::kEvalError: return "EvalError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mockdiff
