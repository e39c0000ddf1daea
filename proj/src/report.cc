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

#include "fairaudit/report.h"

#include "fairaudit/error.h"
#include "fairaudit/serialize.h"
#include "fmt/format.h"

namespace fairaudit {
namespace {

using nlohmann::json;

json CountersToJson(const StageCounters& c) {
  return json{{"calls", c.calls},
              {"prompt_tokens", c.tokens.prompt_tokens},
              {"completion_tokens", c.tokens.completion_tokens},
              {"tokens_estimated", c.tokens.estimated}};
}

StageCounters CountersFromJson(const json& j) {
  StageCounters c;
  j.at("calls").get_to(c.calls);
  j.at("prompt_tokens").get_to(c.tokens.prompt_tokens);
  j.at("completion_tokens").get_to(c.tokens.completion_tokens);
  j.at("tokens_estimated").get_to(c.tokens.estimated);
  return c;
}

json RecordToJson(const RecordOutcome& r) {
  json j{{"id", r.id},
         {"template", r.template_text},
         {"baseline", r.baseline},
         {"entity_scores", r.entity_scores},
         {"detection", r.bias}};
  j["mitigation"] = r.mitigation ? json(*r.mitigation) : json(nullptr);
  j["after_scores"] = r.after_scores;
  j["theta_s_after"] = r.theta_s_after ? json(*r.theta_s_after) : json(nullptr);
  return j;
}

RecordOutcome RecordFromJson(const json& j) {
  RecordOutcome r;
  j.at("id").get_to(r.id);
  j.at("template").get_to(r.template_text);
  j.at("baseline").get_to(r.baseline);
  j.at("entity_scores").get_to(r.entity_scores);
  j.at("detection").get_to(r.bias);
  if (const auto& m = j.at("mitigation"); !m.is_null()) {
    r.mitigation = m.get<MitigationResult>();
  }
  j.at("after_scores").get_to(r.after_scores);
  if (const auto& t = j.at("theta_s_after"); !t.is_null()) {
    r.theta_s_after = t.get<double>();
  }
  return r;
}

std::string Num(double v) { return fmt::format("{}", v); }

}  // namespace

json ReportToJson(const AuditReport& report) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(RecordToJson(r));
  json j{{"schema", report.schema},
         {"tool_version", report.tool_version},
         {"command", report.command},
         {"provider", report.provider},
         {"provenance", report.provenance},
         {"config", report.config},
         {"entities", report.entities},
         {"records", std::move(records)},
         {"entity_theta_before", report.entity_theta_before},
         {"ebv", report.ebv},
         {"global_prior", report.global_prior},
         {"prior_mode_used", PriorModeName(report.prior_mode_used)},
         {"before", report.before},
         {"mitigation_requested", report.mitigation_requested},
         {"mitigated_count", report.mitigated_count},
         {"entity_theta_after", report.entity_theta_after}};
  j["after"] = report.after ? json(*report.after) : json(nullptr);
  j["comparison"] = report.comparison ? json(*report.comparison) : json(nullptr);
  j["counters"] = json{{"detection", CountersToJson(report.counters.detection)},
                       {"mitigation",
                        CountersToJson(report.counters.mitigation)}};
  j["complete"] = report.complete;
  j["failed_records"] = report.failed_records;
  return j;
}

AuditReport ReportFromJson(const json& j) {
  try {
    AuditReport report;
    j.at("schema").get_to(report.schema);
    if (report.schema != kReportSchema) {
      throw AuditError(ErrorCode::kParseFailure,
                       "unsupported report schema '" + report.schema + "'");
    }
    j.at("tool_version").get_to(report.tool_version);
    j.at("command").get_to(report.command);
    j.at("provider").get_to(report.provider);
    j.at("provenance").get_to(report.provenance);
    j.at("config").get_to(report.config);
    j.at("entities").get_to(report.entities);
    for (const auto& r : j.at("records")) {
      report.records.push_back(RecordFromJson(r));
    }
    j.at("entity_theta_before").get_to(report.entity_theta_before);
    j.at("ebv").get_to(report.ebv);
    j.at("global_prior").get_to(report.global_prior);
    report.prior_mode_used =
        ParsePriorMode(j.at("prior_mode_used").get<std::string>());
    j.at("before").get_to(report.before);
    j.at("mitigation_requested").get_to(report.mitigation_requested);
    j.at("mitigated_count").get_to(report.mitigated_count);
    j.at("entity_theta_after").get_to(report.entity_theta_after);
    if (const auto& a = j.at("after"); !a.is_null()) {
      report.after = a.get<FairnessSummary>();
    }
    if (const auto& c = j.at("comparison"); !c.is_null()) {
      report.comparison = c.get<Comparison>();
    }
    report.counters.detection =
        CountersFromJson(j.at("counters").at("detection"));
    report.counters.mitigation =
        CountersFromJson(j.at("counters").at("mitigation"));
    j.at("complete").get_to(report.complete);
    j.at("failed_records").get_to(report.failed_records);
    return report;
  } catch (const json::exception& e) {
    throw AuditError(ErrorCode::kParseFailure,
                     std::string("malformed report: ") + e.what());
  }
}

std::string RenderReportJson(const AuditReport& report) {
  return ReportToJson(report).dump(2) + "\n";
}

std::string CsvField(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string RenderReportCsv(const AuditReport& report) {
  std::string out = "id,baseline";
  for (const auto& e : report.entities) out += "," + CsvField("score:" + e);
  out += ",theta_s,theta_s_hat,risk,triggered,mitigation_source,spread";
  for (const auto& e : report.entities) out += "," + CsvField("after:" + e);
  out += ",theta_s_after\n";
  for (const auto& r : report.records) {
    out += CsvField(r.id) + "," + Num(r.baseline.value());
    for (const auto& p : r.entity_scores) out += "," + Num(p.value());
    out += fmt::format(",{},{},{},{}", Num(r.bias.theta_s),
                       Num(r.bias.theta_s_hat), Num(r.bias.risk),
                       r.bias.triggered ? "true" : "false");
    if (r.mitigation) {
      out += fmt::format(",{},{}", MitigationSourceName(r.mitigation->source),
                         Num(r.mitigation->spread));
    } else {
      out += ",,";
    }
    for (size_t k = 0; k < report.entities.size(); ++k) {
      out += ",";
      if (k < r.after_scores.size()) out += Num(r.after_scores[k].value());
    }
    out += ",";
    if (r.theta_s_after) out += Num(*r.theta_s_after);
    out += "\n";
  }
  return out;
}

}  // namespace fairaudit
