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

// Brute-force re-derivation of every number in a report from its raw scores.
// Shares no arithmetic with the detection or metrics code: sums are plain
// loops in long double, quantiles are recomputed from a fresh sort, and the
// trigger rule is re-applied from the echoed config.

#ifndef FAIRAUDIT_ORACLE_H_
#define FAIRAUDIT_ORACLE_H_

#include <string>
#include <vector>

#include "fairaudit/report.h"

namespace fairaudit {

inline constexpr double kOracleTolerance = 1e-9;

struct OracleMismatch {
  std::string record_id;  // empty for corpus-level fields
  std::string field;
  double expected = 0.0;  // oracle value
  double actual = 0.0;    // report value

  std::string Describe() const;
};

struct OracleVerdict {
  bool pass = true;
  size_t checked = 0;
  std::vector<OracleMismatch> mismatches;
};

OracleVerdict OracleRecompute(const AuditReport& report,
                              double tolerance = kOracleTolerance);

}  // namespace fairaudit

#endif  // FAIRAUDIT_ORACLE_H_
