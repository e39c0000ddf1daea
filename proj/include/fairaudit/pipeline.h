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

// End-to-end audit: score baselines and entity variants, detect, mitigate
// the flagged records, recompute the bias values on the mitigated scores and
// summarize both phases.

#ifndef FAIRAUDIT_PIPELINE_H_
#define FAIRAUDIT_PIPELINE_H_

#include <span>
#include <string>
#include <vector>

#include "fairaudit/corpus.h"
#include "fairaudit/metrics.h"
#include "fairaudit/provider.h"
#include "fairaudit/report.h"
#include "fairaudit/types.h"

namespace fairaudit {

enum class MitigationPolicy {
  kNone,       // detection only, no after phase
  kTriggered,  // mitigate records with risk >= threshold
  kAll,        // mitigate every record
};

struct PipelineOptions {
  MitigationPolicy policy = MitigationPolicy::kTriggered;
  std::string command = "pipeline";
  std::string provenance;
  // 0 uses the provider's max_concurrency().
  size_t max_workers = 0;
};

// Scores every entry lacking pre-recorded scores. A record whose baseline or
// any variant cannot be scored is dropped and listed in `failed_ids`.
// Throws kPipelineAborted when more than half of the scoring calls fail.
struct ScoredCorpus {
  std::vector<EntityRecord> records;
  std::vector<size_t> corpus_index;  // records[i] came from corpus[index[i]]
  std::vector<std::string> failed_ids;
  size_t calls = 0;
  size_t failed_calls = 0;
};
ScoredCorpus ScoreCorpus(const Corpus& corpus, const EntitySet& entities,
                         const AuditConfig& config, ScoreProvider* provider,
                         RunLedger& ledger, size_t max_workers = 0);

// `provider` may be null when every entry carries pre-recorded scores and
// no mitigation is requested.
AuditReport RunPipeline(const Corpus& corpus, const EntitySet& entities,
                        const AuditConfig& config, ScoreProvider* provider,
                        const PipelineOptions& options = {},
                        RunLedger* ledger = nullptr);

struct SweepRow {
  double c_theta = 0.0;
  double trigger_threshold = 0.0;
  size_t triggered_count = 0;
  FairnessSummary before;
  FairnessSummary after;
  std::vector<bool> triggered;         // per scored record
  std::vector<double> theta_s_after;   // per scored record
};

// One row per (c_theta, trigger_threshold) pair, c_theta-major. Scores and
// mitigation answers are obtained once and reused across the grid.
std::vector<SweepRow> SweepThresholds(const Corpus& corpus,
                                      const EntitySet& entities,
                                      const AuditConfig& base_config,
                                      std::span<const double> c_theta_values,
                                      std::span<const double> trigger_values,
                                      ScoreProvider& provider,
                                      RunLedger* ledger = nullptr);

std::string RenderSweepJson(std::span<const SweepRow> rows,
                            const AuditConfig& base_config);
std::string RenderSweepCsv(std::span<const SweepRow> rows);

}  // namespace fairaudit

#endif  // FAIRAUDIT_PIPELINE_H_
