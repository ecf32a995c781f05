// Copyright 2026 The nlgames Authors
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

namespace nlgames {

enum class ErrorCode {
  // linalg
  kNotSquare,
  kNotHermitian,
  kDimensionMismatch,
  kNumericalFailure,
  // ncalg
  kUnknownGenerator,
  kMissingGenerator,
  kRelationViolation,
  // games
  kSyntaxError,
  kSchemaError,
  kNonBinaryAnswers,
  kNotParityDetermined,
  // gns
  kBasisNotClosed,
  kNotAState,
  kNotADilation,
  // xor / casebook
  kTooLarge,
  kInvalidSolution,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kUnknownGenerator: return "UnknownGenerator";
    case ErrorCode::kMissingGenerator: return "MissingGenerator";
    case ErrorCode::kRelationViolation: return "RelationViolation";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kNonBinaryAnswers: return "NonBinaryAnswers";
    case ErrorCode::kNotParityDetermined: return "NotParityDetermined";
    case ErrorCode::kBasisNotClosed: return "BasisNotClosed";
    case ErrorCode::kNotAState: return "NotAState";
    case ErrorCode::kNotADilation: return "NotADilation";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInvalidSolution: return "InvalidSolution";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// command-line front end can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nlgames
