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

#include "fairaudit/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <optional>
#include <thread>

#include "fairaudit/bias_detect.h"
#include "fairaudit/error.h"
#include "fairaudit/mitigation.h"
#include "fairaudit/parse.h"
#include "fairaudit/prompts.h"
#include "fairaudit/serialize.h"
#include "fmt/format.h"
#include "fmt/ranges.h"

namespace fairaudit {
namespace {

using Clock = std::chrono::steady_clock;

// Forwards to another provider and books every call against one stage.
class MeteredProvider : public ScoreProvider {
 public:
  MeteredProvider(ScoreProvider& inner, RunLedger& ledger, Stage stage)
      : inner_(inner), ledger_(ledger), stage_(stage) {}

  Completion Complete(const CompletionRequest& request) override {
    Completion completion = inner_.Complete(request);
    ledger_.RecordCall(stage_, completion.usage);
    return completion;
  }
  size_t max_concurrency() const override { return inner_.max_concurrency(); }
  std::string name() const override { return inner_.name(); }

 private:
  ScoreProvider& inner_;
  RunLedger& ledger_;
  Stage stage_;
};

// Runs fn(0..n-1) on up to `workers` threads. Exceptions are rethrown after
// all work finishes, lowest index first, so failures are deterministic.
template <typename Fn>
void ParallelFor(size_t n, size_t workers, Fn&& fn) {
  if (n == 0) return;
  workers = std::clamp<size_t>(workers, 1, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool IsScoringFailure(const AuditError& e) {
  if (e.is_provider_error()) return true;
  return e.code() == ErrorCode::kParseFailure ||
         e.code() == ErrorCode::kOutOfRange;
}

size_t Workers(size_t requested, const ScoreProvider* provider) {
  if (requested > 0) return requested;
  return provider != nullptr ? provider->max_concurrency() : 1;
}

// Mitigation answers depend only on the template, the entity set and the
// mitigation settings, so one answer per record serves every threshold.
class MitigationCache {
 public:
  MitigationCache(const Corpus& corpus, const EntitySet& entities,
                  const AuditConfig& config, ScoreProvider* provider,
                  RunLedger& ledger, size_t workers)
      : corpus_(corpus),
        entities_(entities),
        config_(config),
        provider_(provider),
        ledger_(ledger),
        workers_(workers) {}

  void Ensure(const ScoredCorpus& scored, const std::vector<size_t>& slots) {
    std::vector<size_t> missing;
    for (size_t slot : slots) {
      if (!results_.contains(slot)) missing.push_back(slot);
    }
    if (missing.empty()) return;
    if (provider_ == nullptr) {
      throw AuditError(ErrorCode::kInvalidArgument,
                       "mitigation requested without a provider");
    }
    MeteredProvider metered(*provider_, ledger_, Stage::kMitigation);
    std::vector<std::optional<MitigationResult>> fresh(missing.size());
    const auto start = Clock::now();
    ParallelFor(missing.size(), workers_, [&](size_t i) {
      const size_t slot = missing[i];
      const CorpusEntry& entry = corpus_[scored.corpus_index[slot]];
      fresh[i] = MitigateRecord(entry.tmpl, entities_, metered, config_,
                                scored.records[slot].entity_scores);
    });
    ledger_.AddWallTime(Stage::kMitigation, Clock::now() - start);
    for (size_t i = 0; i < missing.size(); ++i) {
      results_.emplace(missing[i], std::move(*fresh[i]));
    }
  }

  const MitigationResult& Get(size_t slot) const { return results_.at(slot); }

 private:
  const Corpus& corpus_;
  const EntitySet& entities_;
  const AuditConfig& config_;
  ScoreProvider* provider_;
  RunLedger& ledger_;
  size_t workers_;
  std::map<size_t, MitigationResult> results_;
};

AuditReport Assemble(const Corpus& corpus, const EntitySet& entities,
                     const AuditConfig& config, const ScoredCorpus& scored,
                     MitigationCache& cache, MitigationPolicy policy) {
  const DetectionResult detection = DetectCorpus(scored.records, config);

  AuditReport report;
  report.tool_version = FAIRAUDIT_VERSION;
  report.config = config;
  report.entities = entities.entities();
  report.entity_theta_before = detection.entity_theta;
  report.ebv = detection.ebv;
  report.global_prior = detection.global_prior;
  report.prior_mode_used = detection.prior_mode_used;
  report.complete = scored.failed_ids.empty();
  report.failed_records = scored.failed_ids;

  std::vector<double> theta_s_before;
  for (size_t slot = 0; slot < scored.records.size(); ++slot) {
    const EntityRecord& record = scored.records[slot];
    RecordOutcome outcome;
    outcome.id = record.template_id;
    outcome.template_text = corpus[scored.corpus_index[slot]].tmpl.text();
    outcome.baseline = record.baseline;
    outcome.entity_scores = record.entity_scores;
    outcome.bias = detection.reports[slot];
    theta_s_before.push_back(outcome.bias.theta_s);
    report.records.push_back(std::move(outcome));
  }
  report.before = Summarize(theta_s_before, report.entity_theta_before,
                            Phase::kBefore);

  if (policy == MitigationPolicy::kNone) return report;
  report.mitigation_requested = true;

  std::vector<size_t> to_mitigate;
  for (size_t slot = 0; slot < report.records.size(); ++slot) {
    if (policy == MitigationPolicy::kAll ||
        report.records[slot].bias.triggered) {
      to_mitigate.push_back(slot);
    }
  }
  cache.Ensure(scored, to_mitigate);

  std::vector<EntityRecord> after_records;
  std::vector<double> theta_s_after;
  size_t next = 0;
  for (size_t slot = 0; slot < report.records.size(); ++slot) {
    RecordOutcome& outcome = report.records[slot];
    if (next < to_mitigate.size() && to_mitigate[next] == slot) {
      outcome.mitigation = cache.Get(slot);
      outcome.after_scores = outcome.mitigation->adjusted;
      ++next;
    } else {
      outcome.after_scores = outcome.entity_scores;
    }
    // The baseline is scored once and reused for the after phase.
    EntityRecord after = MakeEntityRecord(outcome.id, outcome.baseline,
                                          outcome.after_scores);
    outcome.theta_s_after = SentenceBias(after);
    theta_s_after.push_back(*outcome.theta_s_after);
    after_records.push_back(std::move(after));
  }
  report.mitigated_count = to_mitigate.size();
  report.entity_theta_after =
      EntityBiases(SensitivityMatrix::FromRecords(after_records));
  report.after =
      Summarize(theta_s_after, report.entity_theta_after, Phase::kAfter);
  report.comparison = Compare(report.before, *report.after);
  return report;
}

void FillCounters(AuditReport& report, const RunLedger& ledger) {
  report.counters.detection = ledger.counters(Stage::kDetection);
  report.counters.mitigation = ledger.counters(Stage::kMitigation);
}

}  // namespace

ScoredCorpus ScoreCorpus(const Corpus& corpus, const EntitySet& entities,
                         const AuditConfig& config, ScoreProvider* provider,
                         RunLedger& ledger, size_t max_workers) {
  const size_t k_count = entities.size();
  // Job j scores corpus entry job.entry; variant -1 is the bare template.
  struct Job {
    size_t entry;
    int variant;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].has_scores()) continue;
    jobs.push_back({i, -1});
    for (size_t k = 0; k < k_count; ++k) {
      jobs.push_back({i, static_cast<int>(k)});
    }
  }
  if (!jobs.empty() && provider == nullptr) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "corpus needs scoring but no provider was given");
  }

  std::vector<std::optional<Probability>> answers(jobs.size());
  std::vector<std::string> errors(jobs.size());
  if (!jobs.empty()) {
    MeteredProvider metered(*provider, ledger, Stage::kDetection);
    const auto start = Clock::now();
    ParallelFor(jobs.size(), Workers(max_workers, provider), [&](size_t j) {
      const CorpusEntry& entry = corpus[jobs[j].entry];
      const std::string sentence =
          jobs[j].variant < 0
              ? entry.tmpl.text()
              : Instantiate(entry.tmpl, entities[jobs[j].variant]);
      const PromptBundle prompt = BuildDetectionPrompt(sentence);
      try {
        const Completion completion = metered.Complete(
            {prompt.system_text, prompt.user_text, config.temperature});
        answers[j] = ParseProbability(completion.text);
      } catch (const AuditError& e) {
        if (!IsScoringFailure(e)) throw;
        errors[j] = e.what();
      }
    });
    ledger.AddWallTime(Stage::kDetection, Clock::now() - start);
  }

  ScoredCorpus scored;
  scored.calls = jobs.size();
  std::map<size_t, std::vector<Probability>> fresh_scores;
  std::map<size_t, Probability> fresh_baselines;
  std::vector<bool> failed(corpus.size(), false);
  std::string first_error;
  for (size_t j = 0; j < jobs.size(); ++j) {
    if (!answers[j]) {
      ++scored.failed_calls;
      failed[jobs[j].entry] = true;
      if (first_error.empty()) first_error = errors[j];
      continue;
    }
    if (jobs[j].variant < 0) {
      fresh_baselines[jobs[j].entry] = *answers[j];
    } else {
      auto& scores = fresh_scores[jobs[j].entry];
      scores.resize(k_count);
      scores[jobs[j].variant] = *answers[j];
    }
  }

  std::vector<size_t> failed_indices;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (failed[i]) {
      failed_indices.push_back(i);
      scored.failed_ids.push_back(corpus[i].tmpl.id());
    }
  }
  if (scored.failed_calls * 2 > scored.calls ||
      failed_indices.size() == corpus.size()) {
    throw AuditError(
        ErrorCode::kPipelineAborted,
        fmt::format("{} of {} scoring calls failed; failed record indices "
                    "[{}]; first error: {}",
                    scored.failed_calls, scored.calls,
                    fmt::join(failed_indices, ", "), first_error));
  }

  for (size_t i = 0; i < corpus.size(); ++i) {
    if (failed[i]) continue;
    const CorpusEntry& entry = corpus[i];
    if (entry.has_scores()) {
      scored.records.push_back(MakeEntityRecord(
          entry.tmpl.id(), *entry.baseline, entry.entity_scores));
    } else {
      scored.records.push_back(MakeEntityRecord(
          entry.tmpl.id(), fresh_baselines.at(i), fresh_scores.at(i)));
    }
    scored.corpus_index.push_back(i);
  }
  return scored;
}

AuditReport RunPipeline(const Corpus& corpus, const EntitySet& entities,
                        const AuditConfig& config, ScoreProvider* provider,
                        const PipelineOptions& options, RunLedger* ledger) {
  config.Validate();
  RunLedger local;
  RunLedger& book = ledger != nullptr ? *ledger : local;
  const size_t workers = Workers(options.max_workers, provider);

  const ScoredCorpus scored =
      ScoreCorpus(corpus, entities, config, provider, book, workers);
  MitigationCache cache(corpus, entities, config, provider, book, workers);
  AuditReport report =
      Assemble(corpus, entities, config, scored, cache, options.policy);
  report.command = options.command;
  report.provider = provider != nullptr ? provider->name() : "none";
  report.provenance = options.provenance;
  FillCounters(report, book);

  for (const auto& r : report.records) book.theta_s_before.push_back(r.bias.theta_s);
  book.theta_e_before = report.entity_theta_before;
  if (report.after) {
    for (const auto& r : report.records) {
      book.theta_s_after.push_back(*r.theta_s_after);
    }
    book.theta_e_after = report.entity_theta_after;
  }
  return report;
}

std::vector<SweepRow> SweepThresholds(const Corpus& corpus,
                                      const EntitySet& entities,
                                      const AuditConfig& base_config,
                                      std::span<const double> c_theta_values,
                                      std::span<const double> trigger_values,
                                      ScoreProvider& provider,
                                      RunLedger* ledger) {
  if (c_theta_values.empty() || trigger_values.empty()) {
    throw AuditError(ErrorCode::kEmptyInput, "sweep ranges must be non-empty");
  }
  base_config.Validate();
  RunLedger local;
  RunLedger& book = ledger != nullptr ? *ledger : local;
  const size_t workers = provider.max_concurrency();

  const ScoredCorpus scored =
      ScoreCorpus(corpus, entities, base_config, &provider, book, workers);
  MitigationCache cache(corpus, entities, base_config, &provider, book,
                        workers);

  std::vector<SweepRow> rows;
  for (double c_theta : c_theta_values) {
    for (double trigger : trigger_values) {
      AuditConfig config = base_config;
      config.c_theta = c_theta;
      config.trigger_threshold = trigger;
      config.Validate();
      const AuditReport report = Assemble(corpus, entities, config, scored,
                                          cache, MitigationPolicy::kTriggered);
      SweepRow row;
      row.c_theta = c_theta;
      row.trigger_threshold = trigger;
      row.triggered_count = report.mitigated_count;
      row.before = report.before;
      row.after = *report.after;
      for (const auto& r : report.records) {
        row.triggered.push_back(r.bias.triggered);
        row.theta_s_after.push_back(*r.theta_s_after);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string RenderSweepJson(std::span<const SweepRow> rows,
                            const AuditConfig& base_config) {
  nlohmann::json out{{"schema", kSweepSchema},
                     {"tool_version", FAIRAUDIT_VERSION},
                     {"config", base_config}};
  nlohmann::json list = nlohmann::json::array();
  for (const auto& row : rows) {
    list.push_back({{"c_theta", row.c_theta},
                    {"trigger_threshold", row.trigger_threshold},
                    {"triggered_count", row.triggered_count},
                    {"before", row.before},
                    {"after", row.after}});
  }
  out["rows"] = std::move(list);
  return out.dump(2) + "\n";
}

std::string RenderSweepCsv(std::span<const SweepRow> rows) {
  std::string out =
      "c_theta,trigger_threshold,triggered_count,sfv_before_mean,"
      "sfv_before_std,efd_before_mean,efd_before_std,sfv_after_mean,"
      "sfv_after_std,efd_after_mean,efd_after_std\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", row.c_theta,
                       row.trigger_threshold, row.triggered_count,
                       row.before.sfv_mean, row.before.sfv_std,
                       row.before.efd_mean, row.before.efd_std,
                       row.after.sfv_mean, row.after.sfv_std,
                       row.after.efd_mean, row.after.efd_std);
  }
  return out;
}

}  // namespace fairaudit
