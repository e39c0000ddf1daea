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

#include "fairaudit/types.h"

#include <cmath>
#include <set>
#include <utility>

#include "fairaudit/error.h"

namespace fairaudit {
namespace {

size_t CountPlaceholders(std::string_view text) {
  size_t count = 0;
  for (size_t pos = text.find(kPlaceholder); pos != std::string_view::npos;
       pos = text.find(kPlaceholder, pos + kPlaceholder.size())) {
    ++count;
  }
  return count;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingPlaceholder: return "MissingPlaceholder";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptySentence: return "EmptySentence";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonpositiveClip: return "NonpositiveClip";
    case ErrorCode::kDegenerateDispersion: return "DegenerateDispersion";
    case ErrorCode::kMixedEntitySets: return "MixedEntitySets";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::kNetworkError: return "NetworkError";
    case ErrorCode::kAuthError: return "AuthError";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kFixtureMiss: return "FixtureMiss";
    case ErrorCode::kMismatchedCorpus: return "MismatchedCorpus";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kPipelineAborted: return "PipelineAborted";
  }
  return "Unknown";
}

bool AuditError::is_provider_error() const {
  switch (code_) {
    case ErrorCode::kProviderUnavailable:
    case ErrorCode::kNetworkError:
    case ErrorCode::kAuthError:
    case ErrorCode::kRateLimited:
    case ErrorCode::kMalformedResponse:
    case ErrorCode::kFixtureMiss:
      return true;
    default:
      return false;
  }
}

SentenceTemplate::SentenceTemplate(std::string id, std::string text)
    : id_(std::move(id)), text_(std::move(text)) {
  const size_t count = CountPlaceholders(text_);
  if (count != 1) {
    throw AuditError(ErrorCode::kMissingPlaceholder,
                     "template '" + id_ + "' has " + std::to_string(count) +
                         " placeholders, expected exactly one");
  }
}

EntitySet::EntitySet(std::vector<std::string> entities)
    : entities_(std::move(entities)) {
  if (entities_.size() < 2) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "entity set needs at least two entities");
  }
  std::set<std::string_view> seen;
  for (const auto& entity : entities_) {
    if (entity.empty()) {
      throw AuditError(ErrorCode::kInvalidArgument, "empty entity name");
    }
    if (!seen.insert(entity).second) {
      throw AuditError(ErrorCode::kInvalidArgument,
                       "duplicate entity '" + entity + "'");
    }
  }
}

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw AuditError(ErrorCode::kOutOfRange,
                     "probability " + std::to_string(value) +
                         " outside [0, 1]");
  }
}

std::vector<double> Values(std::span<const Probability> probabilities) {
  std::vector<double> out;
  out.reserve(probabilities.size());
  for (const auto& p : probabilities) out.push_back(p.value());
  return out;
}

EntityRecord MakeEntityRecord(std::string template_id, Probability baseline,
                              std::vector<Probability> entity_scores) {
  EntityRecord record;
  record.template_id = std::move(template_id);
  record.baseline = baseline;
  record.sensitivities = Sensitivities(baseline, entity_scores);
  record.entity_scores = std::move(entity_scores);
  return record;
}

void AuditConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw AuditError(ErrorCode::kInvalidArgument, what);
  };
  if (!(c_theta > 0.0)) fail("c_theta must be positive");
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda must lie in [0, 1]");
  if (!std::isfinite(trigger_threshold)) fail("trigger threshold not finite");
  if (!(temperature >= 0.0)) fail("temperature must be nonnegative");
  if (offsets.empty()) fail("offset pattern is empty");
  if (!(clamp_low < clamp_high)) fail("clamp_low must be below clamp_high");
  if (clamp_low < 0.0 || clamp_high > 1.0) fail("clamp bounds outside [0, 1]");
  if (!(max_spread >= 0.0)) fail("max_spread must be nonnegative");
}

std::string Instantiate(std::string_view text, std::string_view entity) {
  if (entity.empty()) {
    throw AuditError(ErrorCode::kInvalidArgument, "entity is empty");
  }
  if (CountPlaceholders(text) != 1) {
    throw AuditError(ErrorCode::kMissingPlaceholder,
                     "text must contain the placeholder exactly once: '" +
                         std::string(text) + "'");
  }
  const size_t pos = text.find(kPlaceholder);
  std::string out;
  out.reserve(text.size() + entity.size());
  out.append(text.substr(0, pos));
  out.append(entity);
  out.append(text.substr(pos + kPlaceholder.size()));
  return out;
}

std::string Instantiate(const SentenceTemplate& tmpl, std::string_view entity) {
  return Instantiate(tmpl.text(), entity);
}

std::vector<double> Sensitivities(Probability baseline,
                                  std::span<const Probability> entity_scores) {
  std::vector<double> out;
  out.reserve(entity_scores.size());
  for (const auto& score : entity_scores) {
    out.push_back(score.value() - baseline.value());
  }
  return out;
}

std::string_view PhaseName(Phase phase) {
  return phase == Phase::kBefore ? "before" : "after";
}

std::string_view PriorModeName(PriorMode mode) {
  return mode == PriorMode::kMeanEbv ? "mean_ebv" : "mean_entity_variance";
}

std::string_view MitigationSourceName(MitigationSource source) {
  return source == MitigationSource::kProvider ? "provider" : "local_fallback";
}

PriorMode ParsePriorMode(std::string_view name) {
  if (name == "mean_ebv" || name == "mean-ebv") return PriorMode::kMeanEbv;
  if (name == "mean_entity_variance" || name == "mean-variance" ||
      name == "mean-entity-variance") {
    return PriorMode::kMeanEntityVariance;
  }
  throw AuditError(ErrorCode::kInvalidArgument,
                   "unknown prior mode '" + std::string(name) + "'");
}

}  // namespace fairaudit
