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

// Corpus files are JSON Lines, one template per line:
//
//   {"id": "R1", "template": "come together <ENT> or perish"}
//   {"id": "R2", "template": "...", "baseline": 0.85,
//    "entity_scores": [0.87, 0.95, 0.92, 0.05]}
//
// "baseline" and "entity_scores" are optional but must appear together;
// when present the entry is not re-scored. Blank lines and lines starting
// with '#' are skipped.

#ifndef FAIRAUDIT_CORPUS_H_
#define FAIRAUDIT_CORPUS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairaudit/types.h"

namespace fairaudit {

struct CorpusEntry {
  SentenceTemplate tmpl;
  std::optional<Probability> baseline;
  std::vector<Probability> entity_scores;  // empty unless pre-recorded

  bool has_scores() const { return baseline.has_value(); }
};

using Corpus = std::vector<CorpusEntry>;

// Throws kParseFailure naming the offending line, kInvalidArgument for
// duplicate ids and kLengthMismatch when pre-recorded scores do not match
// the entity count.
Corpus ParseCorpus(std::string_view jsonl, const EntitySet& entities);
Corpus LoadCorpus(const std::string& path, const EntitySet& entities);

// `arg` is either a path to a file with one entity per line or a comma
// separated list.
EntitySet ParseEntities(const std::string& arg);

std::string ReadFile(const std::string& path);

}  // namespace fairaudit

#endif  // FAIRAUDIT_CORPUS_H_
