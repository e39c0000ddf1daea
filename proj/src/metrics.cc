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

#include "fairaudit/metrics.h"

#include "fairaudit/error.h"
#include "fairaudit/stats.h"

namespace fairaudit {
namespace {

MeanStd Summary(std::span<const double> values) {
  return MeanStd{stats::Mean(values), stats::PopulationStd(values)};
}

std::optional<double> ReductionPct(double before, double after) {
  if (!(before > 0.0)) return std::nullopt;
  return (before - after) / before * 100.0;
}

}  // namespace

MeanStd Sfv(std::span<const double> theta_s_values) {
  return Summary(theta_s_values);
}

MeanStd Efd(std::span<const double> theta_e_values) {
  return Summary(theta_e_values);
}

FairnessSummary Summarize(std::span<const double> theta_s_values,
                          std::span<const double> theta_e_values,
                          Phase phase) {
  const MeanStd sfv = Sfv(theta_s_values);
  const MeanStd efd = Efd(theta_e_values);
  FairnessSummary summary;
  summary.sfv_mean = sfv.mean;
  summary.sfv_std = sfv.std;
  summary.efd_mean = efd.mean;
  summary.efd_std = efd.std;
  summary.phase = phase;
  summary.record_count = theta_s_values.size();
  summary.entity_count = theta_e_values.size();
  return summary;
}

Comparison Compare(const FairnessSummary& before,
                   const FairnessSummary& after) {
  if (before.record_count != after.record_count ||
      before.entity_count != after.entity_count) {
    throw AuditError(ErrorCode::kMismatchedCorpus,
                     "summaries cover different corpora (" +
                         std::to_string(before.record_count) + "x" +
                         std::to_string(before.entity_count) + " vs " +
                         std::to_string(after.record_count) + "x" +
                         std::to_string(after.entity_count) + ")");
  }
  Comparison c;
  c.sfv_delta = before.sfv_mean - after.sfv_mean;
  c.efd_delta = before.efd_mean - after.efd_mean;
  c.sfv_reduction_pct = ReductionPct(before.sfv_mean, after.sfv_mean);
  c.efd_reduction_pct = ReductionPct(before.efd_mean, after.efd_mean);
  return c;
}

std::optional<double> VarianceReduction(std::span<const double> before,
                                        std::span<const double> after) {
  const double v_before = stats::PopulationVariance(before);
  if (!(v_before > 0.0)) return std::nullopt;
  return 1.0 - stats::PopulationVariance(after) / v_before;
}

void RunLedger::RecordCall(Stage stage, const TokenUsage& usage) {
  std::lock_guard lock(mu_);
  StageCounters& c = stage == Stage::kDetection ? detection_ : mitigation_;
  c.tokens += usage;
  ++c.calls;
}

void RunLedger::AddWallTime(Stage stage, std::chrono::nanoseconds elapsed) {
  std::lock_guard lock(mu_);
  (stage == Stage::kDetection ? detection_ : mitigation_).wall += elapsed;
}

StageCounters RunLedger::counters(Stage stage) const {
  std::lock_guard lock(mu_);
  return stage == Stage::kDetection ? detection_ : mitigation_;
}

void to_json(nlohmann::json& j, const Comparison& c) {
  j = nlohmann::json{{"sfv_delta", c.sfv_delta}, {"efd_delta", c.efd_delta}};
  j["sfv_reduction_pct"] = c.sfv_reduction_pct
                               ? nlohmann::json(*c.sfv_reduction_pct)
                               : nlohmann::json(nullptr);
  j["efd_reduction_pct"] = c.efd_reduction_pct
                               ? nlohmann::json(*c.efd_reduction_pct)
                               : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, Comparison& c) {
  j.at("sfv_delta").get_to(c.sfv_delta);
  j.at("efd_delta").get_to(c.efd_delta);
  auto read = [&](const char* key, std::optional<double>& out) {
    const auto& v = j.at(key);
    out = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
  };
  read("sfv_reduction_pct", c.sfv_reduction_pct);
  read("efd_reduction_pct", c.efd_reduction_pct);
}

}  // namespace fairaudit
