// Copyright 2026 The Navero Authors
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

#ifndef NAVERO_ERROR_H_
#define NAVERO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace navero {

enum class ErrorCode {
  kParse,
  kValidation,
  kIo,
  kInvalidArgument,
  kIndexOutOfRange,
  kEmptyCategory,
  kNoReplacementCandidate,
  kNoEligibleToken,
  kNoDistinctCandidate,
  kProvider,
  kRoundFailed,
  kAllRoundsFailed,
  kDuplicateId,
  kEmptyCaption,
  kEmptyInput,
  kIdMismatch,
  kMissingType,
  kDimensionMismatch,
  kNonPositiveSigma,
  kNonSquare,
  kBatchTooSmall,
  kRejectedEps,
  kDivergenceDetected,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as navero::Error (or a subclass) so that
// callers can branch on code() without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Transport, timeout or protocol failure talking to an unmasking provider.
class ProviderError : public Error {
 public:
  ProviderError(const std::string& message, int attempts);

  // Number of requests issued before giving up (1 + retries used).
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace navero

#endif  // NAVERO_ERROR_H_
