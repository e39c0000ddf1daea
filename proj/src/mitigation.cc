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

#include "fairaudit/mitigation.h"

#include <algorithm>
#include <string>

#include "fairaudit/error.h"
#include "fairaudit/parse.h"
#include "fairaudit/prompts.h"
#include "fairaudit/stats.h"

namespace fairaudit {
namespace {

double Clamp(double v, const AuditConfig& config) {
  return std::clamp(v, config.clamp_low, config.clamp_high);
}

bool WithinClamp(std::span<const Probability> values,
                 const AuditConfig& config) {
  return std::all_of(values.begin(), values.end(), [&](Probability p) {
    return p.value() >= config.clamp_low && p.value() <= config.clamp_high;
  });
}

}  // namespace

std::vector<Probability> ApplyDeterministicOffsets(Probability base, size_t k,
                                                   const AuditConfig& config) {
  if (config.offsets.empty()) {
    throw AuditError(ErrorCode::kInvalidArgument, "offset pattern is empty");
  }
  const double anchor = Clamp(base.value(), config);
  std::vector<Probability> out;
  out.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    const double offset = config.offsets[i % config.offsets.size()];
    out.emplace_back(Clamp(anchor + offset, config));
  }
  return out;
}

double Spread(std::span<const Probability> values) {
  if (values.empty()) {
    throw AuditError(ErrorCode::kEmptyInput, "spread of an empty list");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return hi->value() - lo->value();
}

bool ValidateSpread(std::span<const Probability> values, double max_spread) {
  return Spread(values) <= max_spread + kSpreadSlack;
}

std::vector<Probability> LocalMitigate(std::span<const Probability> pre_scores,
                                       const AuditConfig& config) {
  if (pre_scores.empty()) {
    throw AuditError(ErrorCode::kEmptyInput,
                     "local mitigation needs the original entity scores");
  }
  const double mean = stats::Mean(Values(pre_scores));
  return ApplyDeterministicOffsets(Probability(Clamp(mean, config)),
                                   pre_scores.size(), config);
}

MitigationResult MitigateRecord(const SentenceTemplate& tmpl,
                                const EntitySet& entities,
                                ScoreProvider& provider,
                                const AuditConfig& config,
                                std::span<const Probability> pre_scores,
                                TokenUsage* usage) {
  if (!pre_scores.empty() && pre_scores.size() != entities.size()) {
    throw AuditError(ErrorCode::kLengthMismatch,
                     "record '" + tmpl.id() + "' has " +
                         std::to_string(pre_scores.size()) +
                         " pre-mitigation scores for " +
                         std::to_string(entities.size()) + " entities");
  }
  const PromptBundle prompt = BuildMitigationPrompt(tmpl, entities);
  const CompletionRequest request{prompt.system_text, prompt.user_text,
                                  config.temperature};

  MitigationResult result;
  result.template_id = tmpl.id();
  std::string failures;
  for (int attempt = 0; attempt < kMitigationAttempts; ++attempt) {
    std::string raw;
    try {
      Completion completion = provider.Complete(request);
      if (usage != nullptr) *usage += completion.usage;
      raw = std::move(completion.text);
      std::vector<Probability> adjusted =
          ParseProbabilityList(raw, entities.size());
      if (!WithinClamp(adjusted, config)) {
        failures += "attempt " + std::to_string(attempt + 1) +
                    ": values outside clamp range; ";
        result.raw_response = raw;
        continue;
      }
      const double spread = Spread(adjusted);
      if (!ValidateSpread(adjusted, config.max_spread)) {
        failures += "attempt " + std::to_string(attempt + 1) +
                    ": spread exceeds limit; ";
        result.raw_response = raw;
        continue;
      }
      result.adjusted = std::move(adjusted);
      result.spread = spread;
      result.valid = true;
      result.raw_response = std::move(raw);
      result.source = MitigationSource::kProvider;
      return result;
    } catch (const AuditError& e) {
      switch (e.code()) {
        case ErrorCode::kParseFailure:
        case ErrorCode::kLengthMismatch:
        case ErrorCode::kOutOfRange:
          result.raw_response = raw;
          break;
        default:
          if (!e.is_provider_error()) throw;
          break;
      }
      failures += "attempt " + std::to_string(attempt + 1) + ": " + e.what() +
                  "; ";
    }
  }

  if (pre_scores.empty()) {
    throw AuditError(ErrorCode::kProviderUnavailable,
                     "mitigation of '" + tmpl.id() +
                         "' failed and no pre-mitigation scores are available "
                         "for the local fallback: " +
                         failures);
  }
  result.adjusted = LocalMitigate(pre_scores, config);
  result.spread = Spread(result.adjusted);
  result.valid = ValidateSpread(result.adjusted, config.max_spread);
  result.source = MitigationSource::kLocalFallback;
  return result;
}

}  // namespace fairaudit
