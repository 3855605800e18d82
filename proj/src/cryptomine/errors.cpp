// Copyright 2026 The Cryptomine Authors.
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

#include "cryptomine/errors.hpp"

namespace cryptomine {

const char *error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnparsableLine: return "UnparsableLine";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kUnknownStage: return "UnknownStage";
    case ErrorCode::kStageDependencyViolation: return "StageDependencyViolation";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kDuplicateDate: return "DuplicateDate";
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kEmptyOverlap: return "EmptyOverlap";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kConstantSeries: return "ConstantSeries";
    case ErrorCode::kAborted: return "Aborted";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code) {}

}  // namespace cryptomine
