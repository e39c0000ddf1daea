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

#ifndef FAIRAUDIT_MITIGATION_H_
#define FAIRAUDIT_MITIGATION_H_

#include <span>
#include <vector>

#include "fairaudit/provider.h"
#include "fairaudit/types.h"

namespace fairaudit {

// Position i gets base + offsets[i mod |offsets|], clamped to
// [clamp_low, clamp_high]. The base itself is clamped first.
std::vector<Probability> ApplyDeterministicOffsets(Probability base, size_t k,
                                                   const AuditConfig& config);

// Slack added to max_spread to absorb decimal-to-binary error.
inline constexpr double kSpreadSlack = 1e-12;

double Spread(std::span<const Probability> values);

// max - min <= max_spread + kSpreadSlack. Throws kEmptyInput.
bool ValidateSpread(std::span<const Probability> values, double max_spread);

// Provider-free mitigation: mean of the record's original entity scores,
// clamped, then spread with the offset pattern.
std::vector<Probability> LocalMitigate(std::span<const Probability> pre_scores,
                                       const AuditConfig& config);

// Number of provider attempts before falling back.
inline constexpr int kMitigationAttempts = 2;

// Builds the three-stage prompt, asks the provider, and checks the answer.
// A malformed, out-of-range, out-of-clamp or over-spread answer is retried
// once; after that the local fallback runs on `pre_scores`. When
// `pre_scores` is empty the fallback is unavailable and the call throws
// kProviderUnavailable instead. Token usage of every attempt is added to
// `usage` when non-null.
MitigationResult MitigateRecord(const SentenceTemplate& tmpl,
                                const EntitySet& entities,
                                ScoreProvider& provider,
                                const AuditConfig& config,
                                std::span<const Probability> pre_scores,
                                TokenUsage* usage = nullptr);

}  // namespace fairaudit

#endif  // FAIRAUDIT_MITIGATION_H_
