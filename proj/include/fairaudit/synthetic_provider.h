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

// A simulated scorer with a configurable per-entity bias. It reads the
// prompts produced by BuildDetectionPrompt / BuildMitigationPrompt, finds
// the sentence(s) and the entity each one names, and answers in the
// requested format.
//
// Detection:  p = clamp(base + bias[k] + noise * u * (1 + temperature), 0, 1)
// Mitigation: p_k = clamp(base + mitigation_bias_scale * bias[k]
//                         + pattern[k mod 3], 0.02, 0.98)
//
// `base` is a per-template value on the 0.01 grid in [base_low, base_high]
// derived from a hash of the template text and the seed, so every variant of
// one template shares it. `u` is uniform in [-1, 1] from a generator seeded
// with the seed and the prompt fingerprint. Answers use two decimals.

#ifndef FAIRAUDIT_SYNTHETIC_PROVIDER_H_
#define FAIRAUDIT_SYNTHETIC_PROVIDER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fairaudit/provider.h"

namespace fairaudit {

struct BiasProfile {
  std::vector<std::string> entities;
  std::vector<double> entity_bias;  // same length as entities
  double base_low = 0.30;
  double base_high = 0.70;
  double noise = 0.0;
  double mitigation_bias_scale = 0.0;
  uint64_t seed = 0;

  void Validate() const;
};

class SyntheticProvider : public ScoreProvider {
 public:
  explicit SyntheticProvider(BiasProfile profile);

  // Never fails on prompts this library builds; throws kMalformedResponse
  // for prompts it cannot interpret.
  Completion Complete(const CompletionRequest& request) override;
  size_t max_concurrency() const override { return 8; }
  std::string name() const override { return "synthetic"; }

  // The per-template base score the provider uses.
  double BaseScore(const std::string& template_text) const;

  const BiasProfile& profile() const { return profile_; }

 private:
  BiasProfile profile_;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_SYNTHETIC_PROVIDER_H_
