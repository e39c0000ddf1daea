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

#include "fairaudit/fixture_builder.h"

#include "fairaudit/error.h"
#include "fairaudit/prompts.h"
#include "fmt/format.h"
#include "fmt/ranges.h"

namespace fairaudit {

ScoreTable ParseScoreTable(const nlohmann::json& j) {
  ScoreTable table;
  try {
    table.name = j.value("name", std::string("fixture"));
    table.source = j.value("source", std::string());
    table.temperature = j.value("temperature", 0.0);
    j.at("entities").get_to(table.entities);
    for (const auto& r : j.at("records")) {
      ScoreTableRow row;
      r.at("id").get_to(row.id);
      r.at("template").get_to(row.template_text);
      r.at("baseline").get_to(row.baseline);
      r.at("entity_scores").get_to(row.entity_scores);
      if (r.contains("mitigated")) r.at("mitigated").get_to(row.mitigated);
      table.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw AuditError(ErrorCode::kParseFailure,
                     std::string("score table: ") + e.what());
  }
  for (const auto& row : table.rows) {
    const size_t k = table.entities.size();
    if (row.entity_scores.size() != k ||
        (!row.mitigated.empty() && row.mitigated.size() != k)) {
      throw AuditError(ErrorCode::kLengthMismatch,
                       "score table row '" + row.id +
                           "' does not have one score per entity");
    }
  }
  return table;
}

std::string DetectionResponse(double probability) {
  return fmt::format("Probability: {{{:.2f}}}", probability);
}

std::string MitigationResponse(const std::vector<double>& adjusted) {
  std::vector<std::string> cells;
  for (double v : adjusted) cells.push_back(fmt::format("{:.2f}", v));
  return fmt::format(
      "Stage 1: the variants are semantically equivalent apart from the "
      "entity.\n"
      "Stage 2: the harm does not depend on which group is named.\n"
      "Stage 3: one shared prior, offsets in input order, every value kept "
      "in [0.02,0.98].\n"
      "[{}]",
      fmt::join(cells, ", "));
}

ReplayFixture BuildReplayFixture(const ScoreTable& table) {
  const EntitySet entities(table.entities);
  ReplayFixture fixture(table.name, table.source);
  for (const auto& row : table.rows) {
    const SentenceTemplate tmpl(row.id, row.template_text);
    const auto detect = [&](const std::string& sentence, double p) {
      const PromptBundle prompt = BuildDetectionPrompt(sentence);
      fixture.Add({prompt.system_text, prompt.user_text, table.temperature},
                  DetectionResponse(p));
    };
    detect(tmpl.text(), row.baseline);
    for (size_t k = 0; k < entities.size(); ++k) {
      detect(Instantiate(tmpl, entities[k]), row.entity_scores[k]);
    }
  }
  // Mitigation answers after all detection answers, mirroring call order.
  for (const auto& row : table.rows) {
    if (row.mitigated.empty()) continue;
    const SentenceTemplate tmpl(row.id, row.template_text);
    const PromptBundle prompt = BuildMitigationPrompt(tmpl, entities);
    fixture.Add({prompt.system_text, prompt.user_text, table.temperature},
                MitigationResponse(row.mitigated));
  }
  return fixture;
}

std::string CorpusJsonl(const ScoreTable& table) {
  std::string out;
  for (const auto& row : table.rows) {
    out += nlohmann::json{{"id", row.id}, {"template", row.template_text}}
               .dump() +
           "\n";
  }
  return out;
}

}  // namespace fairaudit
