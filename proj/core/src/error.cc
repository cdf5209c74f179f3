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

#include "navero/error.h"

namespace navero {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kEmptyCategory: return "EmptyCategory";
    case ErrorCode::kNoReplacementCandidate: return "NoReplacementCandidate";
    case ErrorCode::kNoEligibleToken: return "NoEligibleToken";
    case ErrorCode::kNoDistinctCandidate: return "NoDistinctCandidate";
    case ErrorCode::kProvider: return "ProviderError";
    case ErrorCode::kRoundFailed: return "RoundFailed";
    case ErrorCode::kAllRoundsFailed: return "AllRoundsFailed";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kEmptyCaption: return "EmptyCaption";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kIdMismatch: return "IdMismatch";
    case ErrorCode::kMissingType: return "MissingType";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kBatchTooSmall: return "BatchTooSmall";
    case ErrorCode::kRejectedEps: return "RejectedEps";
    case ErrorCode::kDivergenceDetected: return "DivergenceDetected";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

ProviderError::ProviderError(const std::string& message, int attempts)
    : Error(ErrorCode::kProvider,
            message + " (after " + std::to_string(attempts) + " attempt" +
                (attempts == 1 ? "" : "s") + ")"),
      attempts_(attempts) {}

}  // namespace navero
