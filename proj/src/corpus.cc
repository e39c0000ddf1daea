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

#include "fairaudit/corpus.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fairaudit/error.h"
#include "fairaudit/serialize.h"
#include "fmt/format.h"

namespace fairaudit {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AuditError(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Corpus ParseCorpus(std::string_view jsonl, const EntitySet& entities) {
  Corpus corpus;
  std::set<std::string> ids;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::exception& e) {
      throw AuditError(ErrorCode::kParseFailure,
                       fmt::format("corpus line {}: {}", line_no, e.what()));
    }
    try {
      const auto id = j.at("id").get<std::string>();
      if (!ids.insert(id).second) {
        throw AuditError(ErrorCode::kInvalidArgument,
                         fmt::format("corpus line {}: duplicate id '{}'",
                                     line_no, id));
      }
      CorpusEntry entry{SentenceTemplate(id, j.at("template").get<std::string>()),
                        std::nullopt,
                        {}};
      const bool has_baseline = j.contains("baseline");
      const bool has_scores = j.contains("entity_scores");
      if (has_baseline != has_scores) {
        throw AuditError(ErrorCode::kParseFailure,
                         fmt::format("corpus line {}: baseline and "
                                     "entity_scores must appear together",
                                     line_no));
      }
      if (has_baseline) {
        entry.baseline = j.at("baseline").get<Probability>();
        entry.entity_scores =
            j.at("entity_scores").get<std::vector<Probability>>();
        if (entry.entity_scores.size() != entities.size()) {
          throw AuditError(
              ErrorCode::kLengthMismatch,
              fmt::format("corpus line {}: {} entity scores for {} entities",
                          line_no, entry.entity_scores.size(),
                          entities.size()));
        }
      }
      corpus.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw AuditError(ErrorCode::kParseFailure,
                       fmt::format("corpus line {}: {}", line_no, e.what()));
    }
  }
  if (corpus.empty()) {
    throw AuditError(ErrorCode::kEmptyInput, "corpus has no records");
  }
  return corpus;
}

Corpus LoadCorpus(const std::string& path, const EntitySet& entities) {
  return ParseCorpus(ReadFile(path), entities);
}

EntitySet ParseEntities(const std::string& arg) {
  std::vector<std::string> names;
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::istringstream in(ReadFile(arg));
    std::string line;
    while (std::getline(in, line)) {
      std::string name = Trim(line);
      if (!name.empty() && name.front() != '#') names.push_back(std::move(name));
    }
  } else {
    std::istringstream in(arg);
    std::string item;
    while (std::getline(in, item, ',')) names.push_back(Trim(item));
  }
  return EntitySet(std::move(names));
}

}  // namespace fairaudit
