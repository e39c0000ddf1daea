// Copyright 2026 The FairAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRAUDIT_ERROR_H_
#define FAIRAUDIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairaudit {

enum class ErrorCode {
  kInvalidArgument,
  kMissingPlaceholder,
  kOutOfRange,
  kEmptyInput,
  kEmptySentence,
  kIndexOutOfRange,
  kNonpositiveClip,
  kDegenerateDispersion,
  kMixedEntitySets,
  kParseFailure,
  kLengthMismatch,
  kProviderUnavailable,
  kNetworkError,
  kAuthError,
  kRateLimited,
  kMalformedResponse,
  kFixtureMiss,
  kMismatchedCorpus,
  kIoError,
  kPipelineAborted,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (notably the CLI's exit-code mapping) can branch without parsing
// messages.
class AuditError : public std::runtime_error {
 public:
  AuditError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

  // True for errors that originate in the scoring backend rather than in
  // caller input.
  bool is_provider_error() const;

 private:
  ErrorCode code_;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_ERROR_H_
