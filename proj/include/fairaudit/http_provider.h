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

// Chat-completions client.
//
// Request body (POST <url>):
//   {"model": <model>, "temperature": <t>,
//    "messages": [{"role": "system", "content": <system_text>},
//                 {"role": "user", "content": <user_text>}]}
// with "Authorization: Bearer <api_key>".
//
// Response: choices[0].message.content is the completion text;
// usage.prompt_tokens / usage.completion_tokens are used when present.
//
// Failure policy:
//   401, 403            -> kAuthError, never retried
//   429                 -> retried after Retry-After (seconds, capped);
//                          kRateLimited once attempts run out
//   5xx, transport fail -> retried with exponential backoff;
//                          kNetworkError once attempts run out
//   other status, bad JSON, missing content -> kMalformedResponse

#ifndef FAIRAUDIT_HTTP_PROVIDER_H_
#define FAIRAUDIT_HTTP_PROVIDER_H_

#include <chrono>
#include <semaphore>
#include <string>

#include "fairaudit/provider.h"

namespace fairaudit {

// Name of the environment variable holding the API credential.
inline constexpr const char* kApiKeyEnv = "FAIRAUDIT_API_KEY";

struct HttpEndpointConfig {
  // Full URL of the completions endpoint, e.g.
  // https://api.example.com/v1/chat/completions
  std::string url;
  std::string model;
  std::string api_key;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
  std::chrono::milliseconds max_retry_after{30000};
  std::chrono::milliseconds timeout{60000};
  int max_in_flight = 4;
  int max_tokens = 0;  // 0 omits the field

  void Validate() const;
};

// Reads url/model and the optional tuning fields from a JSON file. The
// credential is taken only from kApiKeyEnv; a file containing "api_key" is
// rejected.
HttpEndpointConfig LoadEndpointConfig(const std::string& path);

class HttpProvider : public ScoreProvider {
 public:
  explicit HttpProvider(HttpEndpointConfig config);

  Completion Complete(const CompletionRequest& request) override;
  size_t max_concurrency() const override {
    return static_cast<size_t>(config_.max_in_flight);
  }
  std::string name() const override { return "http:" + config_.model; }

 private:
  HttpEndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::counting_semaphore<1024> in_flight_;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_HTTP_PROVIDER_H_
