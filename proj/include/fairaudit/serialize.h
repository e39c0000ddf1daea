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

// JSON object model for the domain types. Field names are the snake_case
// member names; enums serialize as their lowercase names.

#ifndef FAIRAUDIT_SERIALIZE_H_
#define FAIRAUDIT_SERIALIZE_H_

#include "fairaudit/types.h"
#include "json.hpp"

namespace fairaudit {

void to_json(nlohmann::json& j, const Probability& p);
void from_json(const nlohmann::json& j, Probability& p);

void to_json(nlohmann::json& j, const EntityRecord& r);
void from_json(const nlohmann::json& j, EntityRecord& r);

void to_json(nlohmann::json& j, const BiasReport& r);
void from_json(const nlohmann::json& j, BiasReport& r);

void to_json(nlohmann::json& j, const MitigationResult& r);
void from_json(const nlohmann::json& j, MitigationResult& r);

void to_json(nlohmann::json& j, const FairnessSummary& s);
void from_json(const nlohmann::json& j, FairnessSummary& s);

void to_json(nlohmann::json& j, const AuditConfig& c);
// Missing keys keep their defaults, so a partial object is a valid config.
void from_json(const nlohmann::json& j, AuditConfig& c);

}  // namespace fairaudit

namespace nlohmann {

template <>
struct adl_serializer<fairaudit::SentenceTemplate> {
  static fairaudit::SentenceTemplate from_json(const json& j);
  static void to_json(json& j, const fairaudit::SentenceTemplate& t);
};

template <>
struct adl_serializer<fairaudit::EntitySet> {
  static fairaudit::EntitySet from_json(const json& j);
  static void to_json(json& j, const fairaudit::EntitySet& s);
};

}  // namespace nlohmann

#endif  // FAIRAUDIT_SERIALIZE_H_
