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

// Offline provider answering from a fixture of canned responses.
//
// Fixture text format (UTF-8, LF or CRLF):
//
//   # comment lines are ignored outside records
//   name: <fixture name>
//   source: <free text>
//   === <64-hex fingerprint>
//   temperature: <real>
//   excerpt: <single-line prompt excerpt, informational only>
//   ---
//   <response body, any number of lines, up to the next "=== " line>
//
// The trailing line break of each body is not part of the response.

#ifndef FAIRAUDIT_REPLAY_PROVIDER_H_
#define FAIRAUDIT_REPLAY_PROVIDER_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fairaudit/provider.h"

namespace fairaudit {

struct FixtureEntry {
  std::string fingerprint;
  double temperature = 0.0;
  std::string excerpt;
  std::string response;

  friend bool operator==(const FixtureEntry&, const FixtureEntry&) = default;
};

class ReplayFixture {
 public:
  ReplayFixture() = default;
  ReplayFixture(std::string name, std::string source)
      : name_(std::move(name)), source_(std::move(source)) {}

  static ReplayFixture Parse(std::string_view text);
  static ReplayFixture Load(const std::string& path);

  // Adds the canned response for `request`. Throws kInvalidArgument when the
  // fingerprint is already present.
  void Add(const CompletionRequest& request, std::string response);

  // nullptr when absent.
  const FixtureEntry* Find(std::string_view fingerprint) const;

  std::string Serialize() const;
  void Save(const std::string& path) const;

  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }
  const std::vector<FixtureEntry>& entries() const { return entries_; }

 private:
  void Insert(FixtureEntry entry);

  std::string name_;
  std::string source_;
  std::vector<FixtureEntry> entries_;  // file order
  std::map<std::string, size_t, std::less<>> index_;
};

// Single line holding the last 96 bytes of the user text (never splitting a
// UTF-8 sequence). Used in fixture files and FixtureMiss messages.
std::string PromptExcerpt(const CompletionRequest& request);

class ReplayProvider : public ScoreProvider {
 public:
  explicit ReplayProvider(ReplayFixture fixture)
      : fixture_(std::move(fixture)) {}

  // Throws kFixtureMiss naming the fingerprint and a prompt excerpt.
  Completion Complete(const CompletionRequest& request) override;
  size_t max_concurrency() const override { return 8; }
  std::string name() const override { return "replay:" + fixture_.name(); }

  const ReplayFixture& fixture() const { return fixture_; }

 private:
  ReplayFixture fixture_;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_REPLAY_PROVIDER_H_
