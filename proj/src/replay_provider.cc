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

#include "fairaudit/replay_provider.h"

#include <fstream>
#include <sstream>

#include "fairaudit/error.h"
#include "fmt/format.h"

namespace fairaudit {
namespace {

constexpr std::string_view kRecordMarker = "=== ";
constexpr std::string_view kBodyMarker = "---";

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool IsHexFingerprint(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

[[noreturn]] void FixtureSyntaxError(size_t line_no, const std::string& what) {
  throw AuditError(ErrorCode::kParseFailure,
                   fmt::format("fixture line {}: {}", line_no, what));
}

}  // namespace

std::string PromptExcerpt(const CompletionRequest& request) {
  // The tail of the user message is where prompts differ from each other.
  constexpr size_t kMax = 96;
  const std::string text = CanonicalizeLineEndings(request.user_text);
  size_t start = text.size() > kMax ? text.size() - kMax : 0;
  while (start < text.size() &&
         (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) {
    ++start;  // do not begin inside a UTF-8 sequence
  }
  std::string out;
  for (size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    out.push_back(c == '\n' || c == '\t' ? ' ' : c);
  }
  return out;
}

void ReplayFixture::Insert(FixtureEntry entry) {
  if (index_.contains(entry.fingerprint)) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "duplicate fixture fingerprint " + entry.fingerprint);
  }
  index_.emplace(entry.fingerprint, entries_.size());
  entries_.push_back(std::move(entry));
}

void ReplayFixture::Add(const CompletionRequest& request,
                        std::string response) {
  FixtureEntry entry;
  entry.fingerprint = Fingerprint(request);
  entry.temperature = request.temperature;
  entry.excerpt = PromptExcerpt(request);
  entry.response = CanonicalizeLineEndings(response);
  if (StartsWith(entry.response, kRecordMarker) ||
      entry.response.find("\n" + std::string(kRecordMarker)) !=
          std::string::npos) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "response line may not start with the record marker");
  }
  Insert(std::move(entry));
}

const FixtureEntry* ReplayFixture::Find(std::string_view fingerprint) const {
  auto it = index_.find(fingerprint);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

ReplayFixture ReplayFixture::Parse(std::string_view text) {
  const std::string canonical = CanonicalizeLineEndings(text);
  std::istringstream in(canonical);
  ReplayFixture fixture;

  enum class State { kHeader, kRecordHead, kBody } state = State::kHeader;
  FixtureEntry current;
  std::vector<std::string> body;
  auto flush = [&] {
    std::string response;
    for (size_t i = 0; i < body.size(); ++i) {
      if (i > 0) response.push_back('\n');
      response += body[i];
    }
    current.response = std::move(response);
    fixture.Insert(std::move(current));
    current = FixtureEntry{};
    body.clear();
  };

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (StartsWith(line, kRecordMarker)) {
      if (state == State::kBody) flush();
      if (state == State::kRecordHead) {
        FixtureSyntaxError(line_no, "record without '---' body separator");
      }
      current.fingerprint = line.substr(kRecordMarker.size());
      if (!IsHexFingerprint(current.fingerprint)) {
        FixtureSyntaxError(line_no, "malformed fingerprint");
      }
      state = State::kRecordHead;
      continue;
    }
    switch (state) {
      case State::kHeader:
        if (line.empty() || line.front() == '#') break;
        if (StartsWith(line, "name: ")) {
          fixture.name_ = line.substr(6);
        } else if (StartsWith(line, "source: ")) {
          fixture.source_ = line.substr(8);
        } else {
          FixtureSyntaxError(line_no, "unexpected header line");
        }
        break;
      case State::kRecordHead:
        if (line == kBodyMarker) {
          state = State::kBody;
        } else if (StartsWith(line, "temperature: ")) {
          try {
            current.temperature = std::stod(line.substr(13));
          } catch (const std::exception&) {
            FixtureSyntaxError(line_no, "bad temperature");
          }
        } else if (StartsWith(line, "excerpt: ")) {
          current.excerpt = line.substr(9);
        } else {
          FixtureSyntaxError(line_no, "unexpected record field");
        }
        break;
      case State::kBody:
        body.push_back(line);
        break;
    }
  }
  if (state == State::kRecordHead) {
    FixtureSyntaxError(line_no, "record without '---' body separator");
  }
  if (state == State::kBody) flush();
  return fixture;
}

ReplayFixture ReplayFixture::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw AuditError(ErrorCode::kIoError, "cannot open fixture " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return Parse(text.str());
}

std::string ReplayFixture::Serialize() const {
  std::string out = "# replay fixture v1\n";
  out += "name: " + name_ + "\n";
  out += "source: " + source_ + "\n";
  for (const auto& entry : entries_) {
    out += fmt::format("{}{}\ntemperature: {:.4f}\nexcerpt: {}\n{}\n",
                       kRecordMarker, entry.fingerprint, entry.temperature,
                       entry.excerpt, kBodyMarker);
    out += entry.response;
    out += '\n';
  }
  return out;
}

void ReplayFixture::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw AuditError(ErrorCode::kIoError, "cannot write fixture " + path);
  }
  out << Serialize();
}

Completion ReplayProvider::Complete(const CompletionRequest& request) {
  const std::string fingerprint = Fingerprint(request);
  const FixtureEntry* entry = fixture_.Find(fingerprint);
  if (entry == nullptr) {
    throw AuditError(ErrorCode::kFixtureMiss,
                     fmt::format("no response for fingerprint {} (temperature "
                                 "{:.4f}, prompt: \"{}\")",
                                 fingerprint, request.temperature,
                                 PromptExcerpt(request)));
  }
  Completion completion;
  completion.text = entry->response;
  completion.usage = EstimateUsage(request, completion.text);
  return completion;
}

}  // namespace fairaudit
