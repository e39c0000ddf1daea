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

#include "fairaudit/synthetic_provider.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "fairaudit/error.h"
#include "fairaudit/types.h"
#include "fmt/format.h"

namespace fairaudit {
namespace {

constexpr std::string_view kSentenceOpen = "Now evaluate the following sentence:\"";
constexpr std::string_view kSentenceClose = "\". Return only the probability";
constexpr std::string_view kVariantsHeader = "Variants (";
constexpr std::array<double, 3> kPromptPattern = {-0.01, 0.00, 0.01};

uint64_t HashToU64(std::string_view material) {
  const std::string hex = Sha256Hex(material);
  return std::stoull(hex.substr(0, 16), nullptr, 16);
}

// [0, 1) with 53 bits.
double UnitFromBits(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double RoundToCents(double v) { return std::round(v * 100.0) / 100.0; }

struct Variant {
  std::optional<size_t> entity;  // nullopt for the bare template
  std::string template_text;
};

}  // namespace

void BiasProfile::Validate() const {
  if (entities.size() != entity_bias.size()) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "bias profile needs one bias per entity");
  }
  if (!(base_low >= 0.0 && base_low <= base_high && base_high <= 1.0)) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "bias profile base range must satisfy 0 <= low <= high <= 1");
  }
  if (!(noise >= 0.0)) {
    throw AuditError(ErrorCode::kInvalidArgument, "noise must be nonnegative");
  }
}

SyntheticProvider::SyntheticProvider(BiasProfile profile)
    : profile_(std::move(profile)) {
  profile_.Validate();
}

double SyntheticProvider::BaseScore(const std::string& template_text) const {
  const double u = UnitFromBits(
      HashToU64(fmt::format("{}\x1f{}", profile_.seed, template_text)));
  return RoundToCents(profile_.base_low +
                      (profile_.base_high - profile_.base_low) * u);
}

Completion SyntheticProvider::Complete(const CompletionRequest& request) {
  // Longest entity first so "White people" wins over "White".
  std::vector<size_t> order(profile_.entities.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return profile_.entities[a].size() > profile_.entities[b].size();
  });
  auto classify = [&](const std::string& sentence) {
    Variant v;
    if (sentence.find(kPlaceholder) != std::string::npos) {
      v.template_text = sentence;
      return v;
    }
    for (size_t k : order) {
      const std::string& name = profile_.entities[k];
      const size_t pos = sentence.find(name);
      if (pos == std::string::npos) continue;
      v.entity = k;
      v.template_text = sentence;
      v.template_text.replace(pos, name.size(), kPlaceholder);
      return v;
    }
    v.template_text = sentence;
    return v;
  };

  const std::string user = CanonicalizeLineEndings(request.user_text);
  std::string text;
  if (const size_t open = user.rfind(kSentenceOpen);
      open != std::string::npos) {
    const size_t start = open + kSentenceOpen.size();
    const size_t close = user.rfind(kSentenceClose);
    if (close == std::string::npos || close < start) {
      throw AuditError(ErrorCode::kMalformedResponse,
                       "synthetic provider cannot locate the sentence");
    }
    const Variant v = classify(user.substr(start, close - start));
    double p = BaseScore(v.template_text);
    if (v.entity) p += profile_.entity_bias[*v.entity];
    if (profile_.noise > 0.0) {
      std::mt19937_64 gen(
          HashToU64(fmt::format("{}\x1f{}", profile_.seed, Fingerprint(request))));
      const double u = 2.0 * UnitFromBits(gen()) - 1.0;
      p += profile_.noise * u * (1.0 + request.temperature);
    }
    text = fmt::format("Probability: {{{:.2f}}}", std::clamp(p, 0.0, 1.0));
  } else if (user.rfind(kVariantsHeader, 0) == 0) {
    std::istringstream lines(user);
    std::string line;
    std::getline(lines, line);  // header
    std::vector<Variant> variants;
    while (std::getline(lines, line)) {
      const size_t dot = line.find(". ");
      if (dot == std::string::npos) continue;
      variants.push_back(classify(line.substr(dot + 2)));
    }
    if (variants.empty()) {
      throw AuditError(ErrorCode::kMalformedResponse,
                       "synthetic provider found no variants");
    }
    const double base = BaseScore(variants.front().template_text);
    std::string list;
    for (size_t i = 0; i < variants.size(); ++i) {
      double p = base + kPromptPattern[i % kPromptPattern.size()];
      if (variants[i].entity) {
        p += profile_.mitigation_bias_scale *
             profile_.entity_bias[*variants[i].entity];
      }
      if (i > 0) list += ", ";
      list += fmt::format("{:.2f}", std::clamp(p, 0.02, 0.98));
    }
    text = fmt::format(
        "Stage 1: the variants differ only in the entity token.\n"
        "Stage 2: the harm judgement does not depend on the entity.\n"
        "Stage 3: prior {:.2f} with the input-order offset pattern.\n[{}]",
        base, list);
  } else {
    throw AuditError(ErrorCode::kMalformedResponse,
                     "synthetic provider does not recognise the prompt");
  }

  Completion completion;
  completion.text = std::move(text);
  completion.usage = EstimateUsage(request, completion.text);
  return completion;
}

}  // namespace fairaudit
