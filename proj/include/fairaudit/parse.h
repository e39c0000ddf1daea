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

// Response parsers. Both take the LAST matching group in the text since
// reasoning may quote numbers before the final answer.

#ifndef FAIRAUDIT_PARSE_H_
#define FAIRAUDIT_PARSE_H_

#include <string_view>
#include <vector>

#include "fairaudit/types.h"

namespace fairaudit {

// "... Probability: {0.92}" -> 0.92.
// Throws kParseFailure (no brace-wrapped decimal) or kOutOfRange.
Probability ParseProbability(std::string_view text);

// "... [0.72, 0.71, 0.73]" -> {0.72, 0.71, 0.73}.
// Throws kParseFailure, kLengthMismatch or kOutOfRange.
std::vector<Probability> ParseProbabilityList(std::string_view text,
                                              size_t expected_k);

}  // namespace fairaudit

#endif  // FAIRAUDIT_PARSE_H_
