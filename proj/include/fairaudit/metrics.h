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

// Sentence Fairness Variance (SFV) and Entity Fairness Dispersion (EFD),
// both reported as mean and population standard deviation.

#ifndef FAIRAUDIT_METRICS_H_
#define FAIRAUDIT_METRICS_H_

#include <chrono>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "fairaudit/provider.h"
#include "fairaudit/types.h"
#include "json.hpp"

namespace fairaudit {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Over per-sentence variances. Throws kEmptyInput.
MeanStd Sfv(std::span<const double> theta_s_values);
// Over per-entity variances. Throws kEmptyInput.
MeanStd Efd(std::span<const double> theta_e_values);

FairnessSummary Summarize(std::span<const double> theta_s_values,
                          std::span<const double> theta_e_values, Phase phase);

struct Comparison {
  double sfv_delta = 0.0;  // before - after
  double efd_delta = 0.0;
  // (before - after) / before * 100; empty when before is zero.
  std::optional<double> sfv_reduction_pct;
  std::optional<double> efd_reduction_pct;
};

// Throws kMismatchedCorpus when the summaries cover different corpus shapes.
Comparison Compare(const FairnessSummary& before, const FairnessSummary& after);

// Fractional reduction of population variance from `before` to `after`,
// 1 - var(after) / var(before). Empty when var(before) is zero.
std::optional<double> VarianceReduction(std::span<const double> before,
                                        std::span<const double> after);

enum class Stage { kDetection, kMitigation };

struct StageCounters {
  TokenUsage tokens;
  int64_t calls = 0;
  std::chrono::nanoseconds wall{0};
};

// Per-phase bias values and per-stage token counters for one run.
// Counter updates are thread-safe.
class RunLedger {
 public:
  void RecordCall(Stage stage, const TokenUsage& usage);
  void AddWallTime(Stage stage, std::chrono::nanoseconds elapsed);
  StageCounters counters(Stage stage) const;

  std::vector<double> theta_s_before;
  std::vector<double> theta_e_before;
  std::vector<double> theta_s_after;
  std::vector<double> theta_e_after;

 private:
  mutable std::mutex mu_;
  StageCounters detection_;
  StageCounters mitigation_;
};

void to_json(nlohmann::json& j, const Comparison& c);
void from_json(const nlohmann::json& j, Comparison& c);

}  // namespace fairaudit

#endif  // FAIRAUDIT_METRICS_H_
