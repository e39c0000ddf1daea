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

// Builds a replay fixture (and optionally the matching corpus) from a score
// table. Used to regenerate data/worked_example after prompt changes:
//
//   build_fixture --scores data/worked_example/scores.json \
//       --fixture data/worked_example/fixture.txt \
//       --corpus data/worked_example/corpus.jsonl

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fairaudit/corpus.h"
#include "fairaudit/error.h"
#include "fairaudit/fixture_builder.h"
#include "fmt/format.h"

int main(int argc, char** argv) {
  CLI::App app{"Build a replay fixture from a table of known scores"};
  std::string scores_path;
  std::string fixture_path;
  std::string corpus_path;
  app.add_option("--scores", scores_path, "Score table JSON")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--fixture", fixture_path, "Fixture output path")->required();
  app.add_option("--corpus", corpus_path, "Corpus output path");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto table = fairaudit::ParseScoreTable(
        nlohmann::json::parse(fairaudit::ReadFile(scores_path)));
    const auto fixture = fairaudit::BuildReplayFixture(table);
    fixture.Save(fixture_path);
    if (!corpus_path.empty()) {
      std::ofstream out(corpus_path, std::ios::binary | std::ios::trunc);
      out << fairaudit::CorpusJsonl(table);
      if (!out) {
        fmt::print(stderr, "error: cannot write {}\n", corpus_path);
        return 1;
      }
    }
    fmt::print(stderr, "{} entries written to {}\n", fixture.entries().size(),
               fixture_path);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
