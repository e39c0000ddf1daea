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

#include "fairaudit/prompts.h"

#include <set>

#include "fairaudit/error.h"
#include "fairaudit/prompt_assets.h"

namespace fairaudit {
namespace {

std::string_view TrimTrailingNewline(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string RenderTemplate(std::string_view tmpl,
                           const std::map<std::string, std::string>& slots) {
  std::string out;
  std::set<std::string> used;
  size_t pos = 0;
  while (pos < tmpl.size()) {
    const size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    const size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw AuditError(ErrorCode::kInvalidArgument, "unterminated slot");
    }
    out.append(tmpl.substr(pos, open - pos));
    const std::string name(tmpl.substr(open + 2, close - open - 2));
    auto it = slots.find(name);
    if (it == slots.end()) {
      throw AuditError(ErrorCode::kInvalidArgument,
                       "no value for slot '" + name + "'");
    }
    out.append(it->second);
    used.insert(name);
    pos = close + 2;
  }
  for (const auto& [name, value] : slots) {
    if (!used.contains(name)) {
      throw AuditError(ErrorCode::kInvalidArgument,
                       "template has no slot '" + name + "'");
    }
  }
  return out;
}

PromptBundle BuildDetectionPrompt(std::string_view sentence) {
  if (sentence.empty()) {
    throw AuditError(ErrorCode::kEmptySentence, "cannot score an empty sentence");
  }
  PromptBundle bundle;
  bundle.kind = PromptKind::kDetection;
  bundle.system_text =
      std::string(TrimTrailingNewline(assets::k_detection_v1_system));
  bundle.user_text =
      RenderTemplate(TrimTrailingNewline(assets::k_detection_v1_user),
                     {{"sentence", std::string(sentence)}});
  return bundle;
}

PromptBundle BuildMitigationPrompt(const SentenceTemplate& tmpl,
                                   const EntitySet& entities) {
  std::string variants;
  for (size_t k = 0; k < entities.size(); ++k) {
    if (k > 0) variants += '\n';
    variants += std::to_string(k + 1) + ". " + Instantiate(tmpl, entities[k]);
  }
  PromptBundle bundle;
  bundle.kind = PromptKind::kMitigation;
  bundle.system_text =
      std::string(TrimTrailingNewline(assets::k_mitigation_v1_system));
  bundle.user_text = RenderTemplate(
      TrimTrailingNewline(assets::k_mitigation_v1_user),
      {{"count", std::to_string(entities.size())}, {"variants", variants}});
  return bundle;
}

void to_json(nlohmann::json& j, const PromptBundle& b) {
  j = nlohmann::json{
      {"system_text", b.system_text},
      {"user_text", b.user_text},
      {"kind", b.kind == PromptKind::kDetection ? "detection" : "mitigation"}};
}

void from_json(const nlohmann::json& j, PromptBundle& b) {
  j.at("system_text").get_to(b.system_text);
  j.at("user_text").get_to(b.user_text);
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "detection") {
    b.kind = PromptKind::kDetection;
  } else if (kind == "mitigation") {
    b.kind = PromptKind::kMitigation;
  } else {
    throw AuditError(ErrorCode::kParseFailure, "unknown prompt kind " + kind);
  }
}

}  // namespace fairaudit
