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

// Detection mathematics: sentence-level and entity-level variances, Entity
// Bias Volatility, local normalization, combined risk and the trigger rule.

#ifndef FAIRAUDIT_BIAS_DETECT_H_
#define FAIRAUDIT_BIAS_DETECT_H_

#include <span>
#include <vector>

#include "fairaudit/types.h"

namespace fairaudit {

// N x K sensitivities, one row per sentence, one column per entity.
class SensitivityMatrix {
 public:
  // Throws kEmptyInput for no rows, kInvalidArgument for K < 2 and
  // kMixedEntitySets when the rows are not rectangular.
  explicit SensitivityMatrix(std::vector<std::vector<double>> rows);
  static SensitivityMatrix FromRecords(std::span<const EntityRecord> records);

  size_t rows() const { return rows_.size(); }
  size_t cols() const { return rows_.front().size(); }
  double at(size_t n, size_t k) const { return rows_[n][k]; }
  const std::vector<double>& row(size_t n) const { return rows_[n]; }
  std::vector<double> column(size_t k) const;

 private:
  std::vector<std::vector<double>> rows_;
};

// Population variance of the record's K sensitivities.
double SentenceBias(const EntityRecord& record);

// Population variance of column k. Throws kIndexOutOfRange.
double EntityBias(const SensitivityMatrix& matrix, size_t k);
std::vector<double> EntityBiases(const SensitivityMatrix& matrix);

// Arithmetic mean of the per-entity variances.
double AggregateEntityBias(std::span<const double> per_entity);

// EBV_k = 1/2 q95(|col_k|) / max_j q95(|col_j|) + 1/2 MAD(col_k) / max_j
// MAD(col_j). MAD is taken over the signed sensitivities.
// Throws kDegenerateDispersion when either denominator is zero.
std::vector<double> EntityBiasVolatility(const SensitivityMatrix& matrix);

// min(theta_s, c_theta) / c_theta. Throws kNonpositiveClip for c_theta <= 0.
double NormalizeLocal(double theta_s, double c_theta);

double CombinedRisk(double theta_s_hat, double global_prior, double lambda);

// Inclusive: risk == threshold mitigates.
inline bool ShouldMitigate(double risk, double threshold) {
  return risk >= threshold;
}

struct DetectionResult {
  std::vector<BiasReport> reports;  // input order
  std::vector<double> entity_theta;
  // Empty when the prior came from entity variances.
  std::vector<double> ebv;
  double global_prior = 0.0;
  // Mode actually used; differs from the configured one after a
  // DegenerateDispersion fallback.
  PriorMode prior_mode_used = PriorMode::kMeanEbv;
};

// Global prior for a matrix under `mode`, falling back from mean EBV to
// mean entity variance on degenerate dispersion.
struct GlobalPrior {
  double value = 0.0;
  PriorMode mode_used = PriorMode::kMeanEbv;
  std::vector<double> ebv;
};
GlobalPrior ComputeGlobalPrior(const SensitivityMatrix& matrix,
                               std::span<const double> entity_theta,
                               PriorMode mode);

// Runs the full detection pass over a corpus scored against one entity set.
DetectionResult DetectCorpus(std::span<const EntityRecord> records,
                             const AuditConfig& config);

}  // namespace fairaudit

#endif  // FAIRAUDIT_BIAS_DETECT_H_
