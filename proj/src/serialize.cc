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

#include "fairaudit/serialize.h"

#include <string>

#include "fairaudit/error.h"

namespace fairaudit {
namespace {

using nlohmann::json;

Phase ParsePhase(const std::string& name) {
  if (name == "before") return Phase::kBefore;
  if (name == "after") return Phase::kAfter;
  throw AuditError(ErrorCode::kParseFailure, "unknown phase '" + name + "'");
}

MitigationSource ParseSource(const std::string& name) {
  if (name == "provider") return MitigationSource::kProvider;
  if (name == "local_fallback") return MitigationSource::kLocalFallback;
  throw AuditError(ErrorCode::kParseFailure,
                   "unknown mitigation source '" + name + "'");
}

template <typename T>
void ReadIfPresent(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

}  // namespace

void to_json(json& j, const Probability& p) { j = p.value(); }

void from_json(const json& j, Probability& p) {
  p = Probability(j.get<double>());
}

void to_json(json& j, const EntityRecord& r) {
  j = json{{"template_id", r.template_id},
           {"baseline", r.baseline},
           {"entity_scores", r.entity_scores},
           {"sensitivities", r.sensitivities}};
}

void from_json(const json& j, EntityRecord& r) {
  j.at("template_id").get_to(r.template_id);
  j.at("baseline").get_to(r.baseline);
  j.at("entity_scores").get_to(r.entity_scores);
  j.at("sensitivities").get_to(r.sensitivities);
  if (r.sensitivities.size() != r.entity_scores.size()) {
    throw AuditError(ErrorCode::kLengthMismatch,
                     "record '" + r.template_id +
                         "' has mismatched score and sensitivity lengths");
  }
}

void to_json(json& j, const BiasReport& r) {
  j = json{{"template_id", r.template_id},
           {"theta_s", r.theta_s},
           {"theta_s_hat", r.theta_s_hat},
           {"risk", r.risk},
           {"triggered", r.triggered},
           {"per_entity_theta", r.per_entity_theta},
           {"global_prior", r.global_prior}};
}

void from_json(const json& j, BiasReport& r) {
  j.at("template_id").get_to(r.template_id);
  j.at("theta_s").get_to(r.theta_s);
  j.at("theta_s_hat").get_to(r.theta_s_hat);
  j.at("risk").get_to(r.risk);
  j.at("triggered").get_to(r.triggered);
  j.at("per_entity_theta").get_to(r.per_entity_theta);
  j.at("global_prior").get_to(r.global_prior);
}

void to_json(json& j, const MitigationResult& r) {
  j = json{{"template_id", r.template_id},
           {"adjusted", r.adjusted},
           {"spread", r.spread},
           {"valid", r.valid},
           {"raw_response", r.raw_response},
           {"source", MitigationSourceName(r.source)}};
}

void from_json(const json& j, MitigationResult& r) {
  j.at("template_id").get_to(r.template_id);
  j.at("adjusted").get_to(r.adjusted);
  j.at("spread").get_to(r.spread);
  j.at("valid").get_to(r.valid);
  j.at("raw_response").get_to(r.raw_response);
  r.source = ParseSource(j.at("source").get<std::string>());
}

void to_json(json& j, const FairnessSummary& s) {
  j = json{{"sfv_mean", s.sfv_mean},
           {"sfv_std", s.sfv_std},
           {"efd_mean", s.efd_mean},
           {"efd_std", s.efd_std},
           {"phase", PhaseName(s.phase)},
           {"record_count", s.record_count},
           {"entity_count", s.entity_count}};
}

void from_json(const json& j, FairnessSummary& s) {
  j.at("sfv_mean").get_to(s.sfv_mean);
  j.at("sfv_std").get_to(s.sfv_std);
  j.at("efd_mean").get_to(s.efd_mean);
  j.at("efd_std").get_to(s.efd_std);
  s.phase = ParsePhase(j.at("phase").get<std::string>());
  ReadIfPresent(j, "record_count", s.record_count);
  ReadIfPresent(j, "entity_count", s.entity_count);
}

void to_json(json& j, const AuditConfig& c) {
  j = json{{"c_theta", c.c_theta},
           {"lambda", c.lambda},
           {"trigger_threshold", c.trigger_threshold},
           {"temperature", c.temperature},
           {"global_prior_mode", PriorModeName(c.global_prior_mode)},
           {"offsets", c.offsets},
           {"clamp_low", c.clamp_low},
           {"clamp_high", c.clamp_high},
           {"max_spread", c.max_spread}};
}

void from_json(const json& j, AuditConfig& c) {
  ReadIfPresent(j, "c_theta", c.c_theta);
  ReadIfPresent(j, "lambda", c.lambda);
  ReadIfPresent(j, "trigger_threshold", c.trigger_threshold);
  ReadIfPresent(j, "temperature", c.temperature);
  if (auto it = j.find("global_prior_mode"); it != j.end()) {
    c.global_prior_mode = ParsePriorMode(it->get<std::string>());
  }
  ReadIfPresent(j, "offsets", c.offsets);
  ReadIfPresent(j, "clamp_low", c.clamp_low);
  ReadIfPresent(j, "clamp_high", c.clamp_high);
  ReadIfPresent(j, "max_spread", c.max_spread);
  c.Validate();
}

}  // namespace fairaudit

namespace nlohmann {

fairaudit::SentenceTemplate adl_serializer<fairaudit::SentenceTemplate>::from_json(
    const json& j) {
  return fairaudit::SentenceTemplate(j.at("id").get<std::string>(),
                                     j.at("text").get<std::string>());
}

void adl_serializer<fairaudit::SentenceTemplate>::to_json(
    json& j, const fairaudit::SentenceTemplate& t) {
  j = json{{"id", t.id()}, {"text", t.text()}};
}

fairaudit::EntitySet adl_serializer<fairaudit::EntitySet>::from_json(
    const json& j) {
  return fairaudit::EntitySet(
      j.at("entities").get<std::vector<std::string>>());
}

void adl_serializer<fairaudit::EntitySet>::to_json(
    json& j, const fairaudit::EntitySet& s) {
  j = json{{"entities", s.entities()}};
}

}  // namespace nlohmann
