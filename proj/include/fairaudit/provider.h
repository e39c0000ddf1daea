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

#ifndef FAIRAUDIT_PROVIDER_H_
#define FAIRAUDIT_PROVIDER_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace fairaudit {

struct CompletionRequest {
  std::string system_text;
  std::string user_text;
  double temperature = 0.0;
};

struct TokenUsage {
  int64_t prompt_tokens = 0;
  int64_t completion_tokens = 0;
  // Set when any contribution was estimated from character counts rather
  // than reported by the backend.
  bool estimated = false;

  TokenUsage& operator+=(const TokenUsage& other) {
    prompt_tokens += other.prompt_tokens;
    completion_tokens += other.completion_tokens;
    estimated = estimated || other.estimated;
    return *this;
  }

  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

struct Completion {
  std::string text;
  TokenUsage usage;
};

// A single-shot completion backend. Implementations must be safe to call
// from several threads at once.
class ScoreProvider {
 public:
  virtual ~ScoreProvider() = default;

  // Throws AuditError with a provider error code on failure.
  virtual Completion Complete(const CompletionRequest& request) = 0;

  // Upper bound on concurrent Complete() calls worth issuing.
  virtual size_t max_concurrency() const { return 1; }

  virtual std::string name() const = 0;
};

// CRLF and lone CR become LF; nothing else changes.
std::string CanonicalizeLineEndings(std::string_view text);

// Lowercase hex SHA-256 over the canonicalized system text, a 0x1f
// separator, the canonicalized user text, another 0x1f, and the temperature
// rendered with four decimals.
std::string Fingerprint(const CompletionRequest& request);

// Hex SHA-256 of arbitrary bytes.
std::string Sha256Hex(std::string_view bytes);

// ceil(chars / 4) for prompt and response; marks the usage as estimated.
TokenUsage EstimateUsage(const CompletionRequest& request,
                         std::string_view response);

}  // namespace fairaudit

#endif  // FAIRAUDIT_PROVIDER_H_
