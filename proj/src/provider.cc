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

#include "fairaudit/provider.h"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "fairaudit/error.h"
#include "fmt/format.h"

namespace fairaudit {

std::string CanonicalizeLineEndings(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::string Sha256Hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
    throw AuditError(ErrorCode::kInvalidArgument, "sha256 failed");
  }
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    fmt::format_to(std::back_inserter(hex), "{:02x}", digest[i]);
  }
  return hex;
}

std::string Fingerprint(const CompletionRequest& request) {
  std::string material = CanonicalizeLineEndings(request.system_text);
  material.push_back('\x1f');
  material += CanonicalizeLineEndings(request.user_text);
  material.push_back('\x1f');
  material += fmt::format("{:.4f}", request.temperature);
  return Sha256Hex(material);
}

TokenUsage EstimateUsage(const CompletionRequest& request,
                         std::string_view response) {
  auto estimate = [](size_t chars) {
    return static_cast<int64_t>((chars + 3) / 4);
  };
  TokenUsage usage;
  usage.prompt_tokens =
      estimate(request.system_text.size() + request.user_text.size());
  usage.completion_tokens = estimate(response.size());
  usage.estimated = true;
  return usage;
}

}  // namespace fairaudit
