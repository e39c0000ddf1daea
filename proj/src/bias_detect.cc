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

#include "fairaudit/bias_detect.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fairaudit/error.h"
#include "fairaudit/stats.h"

namespace fairaudit {

SensitivityMatrix::SensitivityMatrix(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) {
    throw AuditError(ErrorCode::kEmptyInput, "sensitivity matrix has no rows");
  }
  const size_t k = rows_.front().size();
  if (k < 2) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "sensitivity matrix needs at least two entities");
  }
  for (size_t n = 0; n < rows_.size(); ++n) {
    if (rows_[n].size() != k) {
      throw AuditError(ErrorCode::kMixedEntitySets,
                       "row " + std::to_string(n) + " has " +
                           std::to_string(rows_[n].size()) +
                           " entities, expected " + std::to_string(k));
    }
  }
}

SensitivityMatrix SensitivityMatrix::FromRecords(
    std::span<const EntityRecord> records) {
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (const auto& record : records) rows.push_back(record.sensitivities);
  return SensitivityMatrix(std::move(rows));
}

std::vector<double> SensitivityMatrix::column(size_t k) const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row[k]);
  return out;
}

double SentenceBias(const EntityRecord& record) {
  return stats::PopulationVariance(record.sensitivities);
}

double EntityBias(const SensitivityMatrix& matrix, size_t k) {
  if (k >= matrix.cols()) {
    throw AuditError(ErrorCode::kIndexOutOfRange,
                     "entity index " + std::to_string(k) + " >= " +
                         std::to_string(matrix.cols()));
  }
  return stats::PopulationVariance(matrix.column(k));
}

std::vector<double> EntityBiases(const SensitivityMatrix& matrix) {
  std::vector<double> out;
  out.reserve(matrix.cols());
  for (size_t k = 0; k < matrix.cols(); ++k) {
    out.push_back(EntityBias(matrix, k));
  }
  return out;
}

double AggregateEntityBias(std::span<const double> per_entity) {
  return stats::Mean(per_entity);
}

std::vector<double> EntityBiasVolatility(const SensitivityMatrix& matrix) {
  const size_t k_count = matrix.cols();
  std::vector<double> q95(k_count);
  std::vector<double> mad(k_count);
  for (size_t k = 0; k < k_count; ++k) {
    std::vector<double> column = matrix.column(k);
    mad[k] = stats::Mad(column);
    for (double& v : column) v = std::fabs(v);
    q95[k] = stats::Quantile95(column);
  }
  const double q95_max = *std::max_element(q95.begin(), q95.end());
  const double mad_max = *std::max_element(mad.begin(), mad.end());
  if (q95_max <= 0.0 || mad_max <= 0.0) {
    throw AuditError(ErrorCode::kDegenerateDispersion,
                     q95_max <= 0.0 ? "every entity has zero q95(|sigma|)"
                                    : "every entity has zero MAD(sigma)");
  }
  std::vector<double> ebv(k_count);
  for (size_t k = 0; k < k_count; ++k) {
    ebv[k] = 0.5 * q95[k] / q95_max + 0.5 * mad[k] / mad_max;
  }
  return ebv;
}

double NormalizeLocal(double theta_s, double c_theta) {
  if (!(c_theta > 0.0)) {
    throw AuditError(ErrorCode::kNonpositiveClip,
                     "c_theta must be positive, got " +
                         std::to_string(c_theta));
  }
  return std::min(std::max(theta_s, 0.0), c_theta) / c_theta;
}

double CombinedRisk(double theta_s_hat, double global_prior, double lambda) {
  return lambda * theta_s_hat + (1.0 - lambda) * global_prior;
}

GlobalPrior ComputeGlobalPrior(const SensitivityMatrix& matrix,
                               std::span<const double> entity_theta,
                               PriorMode mode) {
  GlobalPrior prior;
  if (mode == PriorMode::kMeanEbv) {
    try {
      prior.ebv = EntityBiasVolatility(matrix);
      prior.value = stats::Mean(prior.ebv);
      prior.mode_used = PriorMode::kMeanEbv;
      return prior;
    } catch (const AuditError& e) {
      if (e.code() != ErrorCode::kDegenerateDispersion) throw;
      prior.ebv.clear();
    }
  }
  prior.value = AggregateEntityBias(entity_theta);
  prior.mode_used = PriorMode::kMeanEntityVariance;
  return prior;
}

DetectionResult DetectCorpus(std::span<const EntityRecord> records,
                             const AuditConfig& config) {
  config.Validate();
  const SensitivityMatrix matrix = SensitivityMatrix::FromRecords(records);

  DetectionResult result;
  result.entity_theta = EntityBiases(matrix);
  GlobalPrior prior = ComputeGlobalPrior(matrix, result.entity_theta,
                                         config.global_prior_mode);
  result.global_prior = prior.value;
  result.prior_mode_used = prior.mode_used;
  result.ebv = std::move(prior.ebv);

  result.reports.reserve(records.size());
  for (const auto& record : records) {
    BiasReport report;
    report.template_id = record.template_id;
    report.theta_s = SentenceBias(record);
    report.theta_s_hat = NormalizeLocal(report.theta_s, config.c_theta);
    report.risk =
        CombinedRisk(report.theta_s_hat, result.global_prior, config.lambda);
    report.triggered = ShouldMitigate(report.risk, config.trigger_threshold);
    report.per_entity_theta = result.entity_theta;
    report.global_prior = result.global_prior;
    result.reports.push_back(std::move(report));
  }
  return result;
}

}  // namespace fairaudit
