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

// Domain types shared by detection, mitigation, metrics and orchestration.
//
// All per-entity lists are positional: index k always refers to the k-th
// entry of the EntitySet the record was scored against. Nothing is keyed by
// entity name.

#ifndef FAIRAUDIT_TYPES_H_
#define FAIRAUDIT_TYPES_H_

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

inline constexpr std::string_view kPlaceholder = "<ENT>";

// A sentence with exactly one entity slot.
class SentenceTemplate {
 public:
  // Throws AuditError(kMissingPlaceholder) unless `text` contains the
  // placeholder exactly once.
  SentenceTemplate(std::string id, std::string text);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }

  friend bool operator==(const SentenceTemplate&,
                         const SentenceTemplate&) = default;

 private:
  std::string id_;
  std::string text_;
};

// Ordered, duplicate-free list of at least two demographic entities.
class EntitySet {
 public:
  explicit EntitySet(std::vector<std::string> entities);

  const std::vector<std::string>& entities() const { return entities_; }
  size_t size() const { return entities_.size(); }
  const std::string& operator[](size_t k) const { return entities_[k]; }

  friend bool operator==(const EntitySet&, const EntitySet&) = default;

 private:
  std::vector<std::string> entities_;
};

// A value in [0, 1]. Stored at full precision; two-decimal rendering only
// happens in prompts and CSV output.
class Probability {
 public:
  constexpr Probability() = default;
  // Throws AuditError(kOutOfRange) outside [0, 1] or for NaN.
  explicit Probability(double value);

  double value() const { return value_; }

  friend auto operator<=>(const Probability&, const Probability&) = default;

 private:
  double value_ = 0.0;
};

std::vector<double> Values(std::span<const Probability> probabilities);

struct EntityRecord {
  std::string template_id;
  Probability baseline;
  std::vector<Probability> entity_scores;
  std::vector<double> sensitivities;

  friend bool operator==(const EntityRecord&, const EntityRecord&) = default;
};

// Builds a record with sensitivities derived from the scores.
EntityRecord MakeEntityRecord(std::string template_id, Probability baseline,
                              std::vector<Probability> entity_scores);

struct BiasReport {
  std::string template_id;
  double theta_s = 0.0;
  double theta_s_hat = 0.0;
  double risk = 0.0;
  bool triggered = false;
  std::vector<double> per_entity_theta;
  double global_prior = 0.0;

  friend bool operator==(const BiasReport&, const BiasReport&) = default;
};

enum class MitigationSource { kProvider, kLocalFallback };

struct MitigationResult {
  std::string template_id;
  std::vector<Probability> adjusted;
  double spread = 0.0;
  bool valid = false;
  std::string raw_response;
  MitigationSource source = MitigationSource::kProvider;

  friend bool operator==(const MitigationResult&,
                         const MitigationResult&) = default;
};

enum class Phase { kBefore, kAfter };

struct FairnessSummary {
  double sfv_mean = 0.0;
  double sfv_std = 0.0;
  double efd_mean = 0.0;
  double efd_std = 0.0;
  Phase phase = Phase::kBefore;
  // Shape of the corpus the summary was computed over; used to refuse
  // comparisons across different corpora.
  size_t record_count = 0;
  size_t entity_count = 0;

  friend bool operator==(const FairnessSummary&,
                         const FairnessSummary&) = default;
};

enum class PriorMode { kMeanEntityVariance, kMeanEbv };

struct AuditConfig {
  double c_theta = 0.25;
  double lambda = 0.5;
  double trigger_threshold = 0.35;
  double temperature = 0.0;
  PriorMode global_prior_mode = PriorMode::kMeanEbv;
  std::vector<double> offsets = {-0.01, 0.00, 0.01};
  double clamp_low = 0.02;
  double clamp_high = 0.98;
  double max_spread = 0.02;

  // Throws AuditError(kInvalidArgument) describing the first violated
  // constraint.
  void Validate() const;

  friend bool operator==(const AuditConfig&, const AuditConfig&) = default;
};

// Replaces the single placeholder in `text` with `entity`.
std::string Instantiate(std::string_view text, std::string_view entity);
std::string Instantiate(const SentenceTemplate& tmpl, std::string_view entity);

// sigma_k = score_k - baseline, positionally.
std::vector<double> Sensitivities(Probability baseline,
                                  std::span<const Probability> entity_scores);

std::string_view PhaseName(Phase phase);
std::string_view PriorModeName(PriorMode mode);
std::string_view MitigationSourceName(MitigationSource source);
PriorMode ParsePriorMode(std::string_view name);

}  // namespace fairaudit

#endif  // FAIRAUDIT_TYPES_H_
