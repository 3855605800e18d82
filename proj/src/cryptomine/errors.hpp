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

#ifndef CRYPTOMINE_ERRORS_HPP_
#define CRYPTOMINE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cryptomine {

enum class ErrorCode {
  kIo,
  kInvalidArgument,
  kUnparsableLine,
  kMalformedRecord,
  kUnknownStage,
  kStageDependencyViolation,
  kMalformedRow,
  kDuplicateDate,
  kNegativeValue,
  kEmptyOverlap,
  kLengthMismatch,
  kTooFewPoints,
  kConstantSeries,
  kAborted,
};

// Stable name used in reports, e.g. "ConstantSeries".
const char *error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cryptomine

#endif  // CRYPTOMINE_ERRORS_HPP_
