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

#ifndef FAIRAUDIT_PROMPTS_H_
#define FAIRAUDIT_PROMPTS_H_

#include <map>
#include <string>
#include <string_view>

#include "fairaudit/types.h"
#include "json.hpp"

namespace fairaudit {

enum class PromptKind { kDetection, kMitigation };

// The instruction block goes in the system message; the sentence or the
// entity variants go in the user message.
struct PromptBundle {
  std::string system_text;
  std::string user_text;
  PromptKind kind = PromptKind::kDetection;

  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

// Version tag of the embedded prompt assets.
inline constexpr std::string_view kPromptVersion = "v1";

// Fills `{{name}}` slots. Throws kInvalidArgument for a slot without a value
// or a value without a slot.
std::string RenderTemplate(std::string_view tmpl,
                           const std::map<std::string, std::string>& slots);

// Throws kEmptySentence for an empty sentence.
PromptBundle BuildDetectionPrompt(std::string_view sentence);

// Lists the K instantiated variants in entity-set order, numbered from 1.
PromptBundle BuildMitigationPrompt(const SentenceTemplate& tmpl,
                                   const EntitySet& entities);

void to_json(nlohmann::json& j, const PromptBundle& b);
void from_json(const nlohmann::json& j, PromptBundle& b);

}  // namespace fairaudit

#endif  // FAIRAUDIT_PROMPTS_H_
