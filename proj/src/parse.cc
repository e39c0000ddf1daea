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

#include "fairaudit/parse.h"

#include <regex>
#include <string>

#include "fairaudit/error.h"

namespace fairaudit {
namespace {

constexpr const char* kDecimal = R"([+-]?(?:\d+(?:\.\d*)?|\.\d+))";

Probability CheckedProbability(const std::string& token) {
  const double value = std::stod(token);
  if (!(value >= 0.0 && value <= 1.0)) {
    throw AuditError(ErrorCode::kOutOfRange,
                     "parsed value " + token + " outside [0, 1]");
  }
  return Probability(value);
}

std::string Excerpt(std::string_view text) {
  constexpr size_t kMax = 80;
  if (text.size() <= kMax) return std::string(text);
  return std::string(text.substr(text.size() - kMax));
}

}  // namespace

Probability ParseProbability(std::string_view text) {
  static const std::regex kBraced(std::string(R"(\{\s*()") + kDecimal +
                                  R"()\s*\})");
  const std::string haystack(text);
  std::string last;
  for (auto it = std::sregex_iterator(haystack.begin(), haystack.end(),
                                      kBraced);
       it != std::sregex_iterator(); ++it) {
    last = (*it)[1].str();
  }
  if (last.empty()) {
    throw AuditError(ErrorCode::kParseFailure,
                     "no brace-wrapped probability in '" + Excerpt(text) + "'");
  }
  return CheckedProbability(last);
}

std::vector<Probability> ParseProbabilityList(std::string_view text,
                                              size_t expected_k) {
  if (expected_k == 0) {
    throw AuditError(ErrorCode::kInvalidArgument, "expected_k must be >= 1");
  }
  const std::string decimal(kDecimal);
  static const std::regex kList(R"(\[\s*()" + decimal + R"((?:\s*,\s*)" +
                                decimal + R"()*)\s*,?\s*\])");
  static const std::regex kNumber(decimal);

  const std::string haystack(text);
  std::string last;
  for (auto it = std::sregex_iterator(haystack.begin(), haystack.end(), kList);
       it != std::sregex_iterator(); ++it) {
    last = (*it)[1].str();
  }
  if (last.empty()) {
    throw AuditError(ErrorCode::kParseFailure,
                     "no bracketed probability list in '" + Excerpt(text) +
                         "'");
  }
  std::vector<std::string> tokens;
  for (auto it = std::sregex_iterator(last.begin(), last.end(), kNumber);
       it != std::sregex_iterator(); ++it) {
    tokens.push_back(it->str());
  }
  if (tokens.size() != expected_k) {
    throw AuditError(ErrorCode::kLengthMismatch,
                     "expected " + std::to_string(expected_k) +
                         " probabilities, got " +
                         std::to_string(tokens.size()));
  }
  std::vector<Probability> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) out.push_back(CheckedProbability(token));
  return out;
}

}  // namespace fairaudit
