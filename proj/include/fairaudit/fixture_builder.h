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

// Turns a table of known scores into a replay fixture that answers exactly
// the prompts the pipeline will send for that table.
//
// Input JSON:
//   {"name": ..., "source": ..., "temperature": 0.0,
//    "entities": ["A", "B"],
//    "records": [{"id": ..., "template": "... <ENT> ...",
//                 "baseline": 0.5, "entity_scores": [..],
//                 "mitigated": [..]}]}        // "mitigated" optional

#ifndef FAIRAUDIT_FIXTURE_BUILDER_H_
#define FAIRAUDIT_FIXTURE_BUILDER_H_

#include <string>
#include <vector>

#include "fairaudit/replay_provider.h"
#include "fairaudit/types.h"
#include "json.hpp"

namespace fairaudit {

struct ScoreTableRow {
  std::string id;
  std::string template_text;
  double baseline = 0.0;
  std::vector<double> entity_scores;
  std::vector<double> mitigated;  // empty: no mitigation answer recorded
};

struct ScoreTable {
  std::string name;
  std::string source;
  double temperature = 0.0;
  std::vector<std::string> entities;
  std::vector<ScoreTableRow> rows;
};

// Throws kParseFailure on malformed input and kLengthMismatch when a score
// list does not have one entry per entity.
ScoreTable ParseScoreTable(const nlohmann::json& j);

std::string DetectionResponse(double probability);
std::string MitigationResponse(const std::vector<double>& adjusted);

ReplayFixture BuildReplayFixture(const ScoreTable& table);

// Corpus lines without scores, suitable for a replayed run.
std::string CorpusJsonl(const ScoreTable& table);

}  // namespace fairaudit

#endif  // FAIRAUDIT_FIXTURE_BUILDER_H_
