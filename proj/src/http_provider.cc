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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "fairaudit/http_provider.h"

#include <cstdlib>
#include <fstream>
#include <thread>

#include "fairaudit/error.h"
#include "fmt/format.h"
#include "httplib.h"
#include "json.hpp"

namespace fairaudit {

using nlohmann::json;

namespace {

// Releases a semaphore slot on scope exit.
class InFlightSlot {
 public:
  explicit InFlightSlot(std::counting_semaphore<1024>& sem) : sem_(sem) {
    sem_.acquire();
  }
  ~InFlightSlot() { sem_.release(); }
  InFlightSlot(const InFlightSlot&) = delete;
  InFlightSlot& operator=(const InFlightSlot&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

}  // namespace

void HttpEndpointConfig::Validate() const {
  if (url.rfind("http://", 0) != 0 && url.rfind("https://", 0) != 0) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "endpoint url must start with http:// or https://");
  }
  if (model.empty()) {
    throw AuditError(ErrorCode::kInvalidArgument, "endpoint model is empty");
  }
  if (max_attempts < 1) {
    throw AuditError(ErrorCode::kInvalidArgument, "max_attempts must be >= 1");
  }
  if (max_in_flight < 1 || max_in_flight > 1024) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "max_in_flight must lie in [1, 1024]");
  }
}

HttpEndpointConfig LoadEndpointConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw AuditError(ErrorCode::kIoError, "cannot open endpoint config " + path);
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw AuditError(ErrorCode::kParseFailure,
                     "endpoint config " + path + ": " + e.what());
  }
  if (j.contains("api_key")) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     std::string("credentials belong in $") + kApiKeyEnv +
                         ", not in the config file");
  }
  HttpEndpointConfig config;
  config.url = j.at("url").get<std::string>();
  config.model = j.at("model").get<std::string>();
  config.max_attempts = j.value("max_attempts", config.max_attempts);
  config.initial_backoff = std::chrono::milliseconds(
      j.value("initial_backoff_ms", config.initial_backoff.count()));
  config.max_retry_after = std::chrono::milliseconds(
      j.value("max_retry_after_ms", config.max_retry_after.count()));
  config.timeout =
      std::chrono::milliseconds(j.value("timeout_ms", config.timeout.count()));
  config.max_in_flight = j.value("max_in_flight", config.max_in_flight);
  config.max_tokens = j.value("max_tokens", config.max_tokens);
  if (const char* key = std::getenv(kApiKeyEnv); key != nullptr) {
    config.api_key = key;
  }
  config.Validate();
  return config;
}

HttpProvider::HttpProvider(HttpEndpointConfig config)
    : config_(std::move(config)), in_flight_(0) {
  config_.Validate();
  const size_t path_start = config_.url.find('/', config_.url.find("://") + 3);
  if (path_start == std::string::npos) {
    scheme_host_port_ = config_.url;
    path_ = "/";
  } else {
    scheme_host_port_ = config_.url.substr(0, path_start);
    path_ = config_.url.substr(path_start);
  }
  in_flight_.release(config_.max_in_flight);
}

Completion HttpProvider::Complete(const CompletionRequest& request) {
  if (config_.api_key.empty()) {
    throw AuditError(ErrorCode::kAuthError,
                     std::string("no credential; set $") + kApiKeyEnv);
  }
  json body = {{"model", config_.model},
               {"temperature", request.temperature},
               {"messages",
                json::array({{{"role", "system"},
                              {"content", request.system_text}},
                             {{"role", "user"},
                              {"content", request.user_text}}})}};
  if (config_.max_tokens > 0) body["max_tokens"] = config_.max_tokens;
  const std::string payload = body.dump();

  InFlightSlot slot(in_flight_);
  httplib::Client client(scheme_host_port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(
      config_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      config_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  const httplib::Headers headers = {
      {"Authorization", "Bearer " + config_.api_key}};

  auto backoff = config_.initial_backoff;
  std::string last_failure;
  ErrorCode last_code = ErrorCode::kNetworkError;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    auto wait = backoff;
    httplib::Result res =
        client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_code = ErrorCode::kNetworkError;
      last_failure = "transport error: " + httplib::to_string(res.error());
    } else if (res->status == 401 || res->status == 403) {
      throw AuditError(ErrorCode::kAuthError,
                       fmt::format("endpoint rejected credential (HTTP {})",
                                   res->status));
    } else if (res->status == 429) {
      last_code = ErrorCode::kRateLimited;
      last_failure = "HTTP 429";
      if (res->has_header("Retry-After")) {
        try {
          wait = std::chrono::milliseconds(static_cast<int64_t>(
              std::stod(res->get_header_value("Retry-After")) * 1000.0));
        } catch (const std::exception&) {
          // HTTP-date form; keep exponential backoff.
        }
      }
      wait = std::min(wait, config_.max_retry_after);
    } else if (res->status >= 500) {
      last_code = ErrorCode::kNetworkError;
      last_failure = fmt::format("HTTP {}", res->status);
    } else if (res->status != 200) {
      throw AuditError(ErrorCode::kMalformedResponse,
                       fmt::format("unexpected HTTP {}: {}", res->status,
                                   res->body.substr(0, 200)));
    } else {
      Completion completion;
      try {
        const json reply = json::parse(res->body);
        completion.text = reply.at("choices")
                              .at(0)
                              .at("message")
                              .at("content")
                              .get<std::string>();
        if (auto usage = reply.find("usage");
            usage != reply.end() && usage->is_object()) {
          completion.usage.prompt_tokens = usage->value("prompt_tokens", 0);
          completion.usage.completion_tokens =
              usage->value("completion_tokens", 0);
        } else {
          completion.usage = EstimateUsage(request, completion.text);
        }
      } catch (const json::exception& e) {
        throw AuditError(ErrorCode::kMalformedResponse,
                         std::string("cannot read completion: ") + e.what());
      }
      return completion;
    }
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(wait);
      backoff = std::chrono::milliseconds(static_cast<int64_t>(
          static_cast<double>(backoff.count()) * config_.backoff_multiplier));
    }
  }
  throw AuditError(last_code,
                   fmt::format("giving up after {} attempts: {}",
                               config_.max_attempts, last_failure));
}

}  // namespace fairaudit
