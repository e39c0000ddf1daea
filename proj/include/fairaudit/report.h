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

// Audit report model and its JSON / CSV renderings. The JSON schema is
// documented field by field in docs/report_schema.md.

#ifndef FAIRAUDIT_REPORT_H_
#define FAIRAUDIT_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "fairaudit/metrics.h"
#include "fairaudit/types.h"
#include "json.hpp"

namespace fairaudit {

inline constexpr std::string_view kReportSchema = "fairaudit.report/1";
inline constexpr std::string_view kSweepSchema = "fairaudit.sweep/1";

struct RecordOutcome {
  std::string id;
  std::string template_text;
  Probability baseline;
  std::vector<Probability> entity_scores;
  BiasReport bias;
  std::optional<MitigationResult> mitigation;
  // Scores used for the after phase: the mitigated list for mitigated
  // records, the original scores otherwise. Empty without an after phase.
  std::vector<Probability> after_scores;
  std::optional<double> theta_s_after;
};

struct ReportCounters {
  StageCounters detection;
  StageCounters mitigation;
};

struct AuditReport {
  std::string schema{kReportSchema};
  std::string tool_version;
  std::string command;
  std::string provider;
  std::string provenance;
  AuditConfig config;
  std::vector<std::string> entities;

  std::vector<RecordOutcome> records;  // corpus order, failed ones omitted
  std::vector<double> entity_theta_before;
  std::vector<double> ebv;  // empty unless the prior came from EBV
  double global_prior = 0.0;
  PriorMode prior_mode_used = PriorMode::kMeanEbv;
  FairnessSummary before;

  bool mitigation_requested = false;
  size_t mitigated_count = 0;
  std::vector<double> entity_theta_after;
  std::optional<FairnessSummary> after;
  std::optional<Comparison> comparison;

  ReportCounters counters;
  bool complete = true;
  std::vector<std::string> failed_records;
};

// Wall-clock counters are left out of the JSON so identical runs produce
// identical bytes.
nlohmann::json ReportToJson(const AuditReport& report);
AuditReport ReportFromJson(const nlohmann::json& j);

// Pretty-printed JSON with a trailing newline.
std::string RenderReportJson(const AuditReport& report);

// One row per record: scores, detection values, mitigation outcome and
// after-phase scores.
std::string RenderReportCsv(const AuditReport& report);

// RFC 4180 quoting when needed.
std::string CsvField(std::string_view value);

}  // namespace fairaudit

#endif  // FAIRAUDIT_REPORT_H_
