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

// fairaudit: command-line front end for the audit pipeline.
//
//   fairaudit detect   --input corpus.jsonl --entities A,B --provider ...
//   fairaudit mitigate --input detect-report.json --provider ...
//   fairaudit evaluate --input scored.jsonl --entities A,B
//   fairaudit pipeline --input corpus.jsonl --entities A,B --provider ...
//   fairaudit sweep    --input corpus.jsonl --entities A,B --provider ...
//   fairaudit verify   --input report.json
//
// Reports go to --out (or stdout); timing and call counters go to stderr.
// Exit status: 0 ok, 1 usage error, 2 provider failure, 3 oracle mismatch.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairaudit/corpus.h"
#include "fairaudit/error.h"
#include "fairaudit/http_provider.h"
#include "fairaudit/metrics.h"
#include "fairaudit/oracle.h"
#include "fairaudit/pipeline.h"
#include "fairaudit/replay_provider.h"
#include "fairaudit/report.h"
#include "fairaudit/serialize.h"
#include "fairaudit/synthetic_provider.h"
#include "fmt/format.h"
#include "json.hpp"

namespace fa = fairaudit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitProvider = 2;
constexpr int kExitOracle = 3;

struct Options {
  std::string input;
  std::string entities;
  std::string provider;
  std::string fixture;
  std::string endpoint;
  std::string config_path;
  std::string out;
  std::string format = "json";
  std::string provenance;
  std::optional<double> temperature;
  std::optional<double> c_theta;
  std::optional<double> lambda;
  std::optional<double> trigger;
  std::optional<std::string> prior_mode;
  std::optional<std::string> offsets;
  uint64_t seed = 0;
  std::string synthetic_bias;
  double synthetic_noise = 0.0;
  double synthetic_mitigation_scale = 0.0;
  std::string c_theta_grid = "0.15,0.20,0.25,0.30,0.35";
  std::string trigger_grid = "0.25,0.30,0.35,0.40,0.45";
  size_t workers = 0;
};

std::vector<double> ParseReals(const std::string& list,
                               const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(
                                     item[used]))) {
      ++used;
    }
    if (item.empty() || used != item.size()) {
      throw fa::AuditError(fa::ErrorCode::kInvalidArgument,
                           fmt::format("{}: '{}' is not a number", what, item));
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw fa::AuditError(fa::ErrorCode::kInvalidArgument,
                         what + " needs at least one value");
  }
  return values;
}

fa::AuditConfig BuildConfig(const Options& opt) {
  fa::AuditConfig config;
  if (!opt.config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(fa::ReadFile(opt.config_path));
    } catch (const nlohmann::json::exception& e) {
      throw fa::AuditError(fa::ErrorCode::kInvalidArgument,
                           opt.config_path + ": " + e.what());
    }
    // A full report may be passed; its echoed config is reused.
    if (j.contains("schema") && j.contains("config")) j = j.at("config");
    config = j.get<fa::AuditConfig>();
  }
  if (opt.temperature) config.temperature = *opt.temperature;
  if (opt.c_theta) config.c_theta = *opt.c_theta;
  if (opt.lambda) config.lambda = *opt.lambda;
  if (opt.trigger) config.trigger_threshold = *opt.trigger;
  if (opt.prior_mode) config.global_prior_mode = fa::ParsePriorMode(*opt.prior_mode);
  if (opt.offsets) config.offsets = ParseReals(*opt.offsets, "--offsets");
  config.Validate();
  return config;
}

std::unique_ptr<fa::ScoreProvider> BuildProvider(const Options& opt,
                                                 const fa::EntitySet& entities,
                                                 bool required) {
  if (opt.provider.empty()) {
    if (required) {
      throw fa::AuditError(fa::ErrorCode::kInvalidArgument,
                           "--provider is required for this command");
    }
    return nullptr;
  }
  if (opt.provider == "replay") {
    if (opt.fixture.empty()) {
      throw fa::AuditError(fa::ErrorCode::kInvalidArgument,
                           "--provider replay needs --fixture");
    }
    return std::make_unique<fa::ReplayProvider>(
        fa::ReplayFixture::Load(opt.fixture));
  }
  if (opt.provider == "synthetic") {
    fa::BiasProfile profile;
    profile.entities = entities.entities();
    profile.entity_bias =
        opt.synthetic_bias.empty()
            ? std::vector<double>(entities.size(), 0.0)
            : ParseReals(opt.synthetic_bias, "--synthetic-bias");
    profile.noise = opt.synthetic_noise;
    profile.mitigation_bias_scale = opt.synthetic_mitigation_scale;
    profile.seed = opt.seed;
    return std::make_unique<fa::SyntheticProvider>(std::move(profile));
  }
  // http
  if (opt.endpoint.empty()) {
    throw fa::AuditError(fa::ErrorCode::kInvalidArgument,
                         "--provider http needs --endpoint <json>");
  }
  return std::make_unique<fa::HttpProvider>(
      fa::LoadEndpointConfig(opt.endpoint));
}

std::string Provenance(const Options& opt) {
  if (!opt.provenance.empty()) return opt.provenance;
  if (opt.provider == "replay") {
    // Only the file name so reports do not depend on the checkout path.
    const size_t slash = opt.fixture.find_last_of('/');
    return "replay fixture " + (slash == std::string::npos
                                    ? opt.fixture
                                    : opt.fixture.substr(slash + 1));
  }
  if (opt.provider == "synthetic") {
    return fmt::format("synthetic seed {}", opt.seed);
  }
  return opt.provider;
}

void Emit(const Options& opt, const std::string& text) {
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) {
    throw fa::AuditError(fa::ErrorCode::kIoError,
                         "cannot write '" + opt.out + "'");
  }
}

void PrintCounters(const fa::RunLedger& ledger,
                   std::chrono::steady_clock::duration total) {
  for (const auto& [stage, name] :
       {std::pair{fa::Stage::kDetection, "detection"},
        std::pair{fa::Stage::kMitigation, "mitigation"}}) {
    const fa::StageCounters c = ledger.counters(stage);
    fmt::print(stderr, "{:<10} calls={} prompt_tokens={} completion_tokens={}{} wall={:.3f}s\n",
               name, c.calls, c.tokens.prompt_tokens,
               c.tokens.completion_tokens, c.tokens.estimated ? " (est)" : "",
               std::chrono::duration<double>(c.wall).count());
  }
  fmt::print(stderr, "total wall={:.3f}s\n",
             std::chrono::duration<double>(total).count());
}

std::string RenderReport(const Options& opt, const fa::AuditReport& report) {
  return opt.format == "csv" ? fa::RenderReportCsv(report)
                             : fa::RenderReportJson(report);
}

fa::AuditReport LoadReport(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(fa::ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw fa::AuditError(fa::ErrorCode::kParseFailure, path + ": " + e.what());
  }
  return fa::ReportFromJson(j);
}

int RunAudit(const Options& opt, const std::string& command,
             fa::MitigationPolicy policy) {
  const auto start = std::chrono::steady_clock::now();
  const fa::EntitySet entities = fa::ParseEntities(opt.entities);
  const fa::AuditConfig config = BuildConfig(opt);
  const fa::Corpus corpus = fa::LoadCorpus(opt.input, entities);
  const bool needs_provider =
      policy != fa::MitigationPolicy::kNone ||
      std::any_of(corpus.begin(), corpus.end(),
                  [](const fa::CorpusEntry& e) { return !e.has_scores(); });
  if (command == "evaluate" && needs_provider) {
    throw fa::AuditError(fa::ErrorCode::kInvalidArgument,
                         "evaluate needs pre-recorded scores on every line");
  }
  auto provider = BuildProvider(opt, entities, needs_provider);

  fa::PipelineOptions options;
  options.policy = policy;
  options.command = command;
  options.provenance = provider ? Provenance(opt) : "pre-recorded scores";
  options.max_workers = opt.workers;
  fa::RunLedger ledger;
  const fa::AuditReport report =
      fa::RunPipeline(corpus, entities, config, provider.get(), options,
                      &ledger);
  Emit(opt, RenderReport(opt, report));
  PrintCounters(ledger, std::chrono::steady_clock::now() - start);
  if (!report.complete) {
    fmt::print(stderr, "warning: {} record(s) could not be scored: {}\n",
               report.failed_records.size(),
               fmt::join(report.failed_records, ", "));
  }
  return kExitOk;
}

// Mitigates the triggered records of an earlier detection report. The
// detection values are recomputed from the report's raw scores, so a report
// edited by hand cannot smuggle in inconsistent flags.
int RunMitigate(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const fa::AuditReport detected = LoadReport(opt.input);
  const fa::EntitySet entities(detected.entities);
  fa::AuditConfig config = detected.config;
  if (opt.config_path.empty()) {
    if (opt.temperature) config.temperature = *opt.temperature;
    if (opt.c_theta) config.c_theta = *opt.c_theta;
    if (opt.lambda) config.lambda = *opt.lambda;
    if (opt.trigger) config.trigger_threshold = *opt.trigger;
    if (opt.prior_mode) config.global_prior_mode = fa::ParsePriorMode(*opt.prior_mode);
    if (opt.offsets) config.offsets = ParseReals(*opt.offsets, "--offsets");
    config.Validate();
  } else {
    config = BuildConfig(opt);
  }

  fa::Corpus corpus;
  for (const auto& r : detected.records) {
    corpus.push_back({fa::SentenceTemplate(r.id, r.template_text), r.baseline,
                      r.entity_scores});
  }
  auto provider = BuildProvider(opt, entities, true);
  fa::PipelineOptions options;
  options.policy = fa::MitigationPolicy::kTriggered;
  options.command = "mitigate";
  options.provenance = Provenance(opt);
  options.max_workers = opt.workers;
  fa::RunLedger ledger;
  fa::AuditReport report = fa::RunPipeline(corpus, entities, config,
                                           provider.get(), options, &ledger);
  report.counters.detection = detected.counters.detection;
  report.complete = detected.complete;
  report.failed_records = detected.failed_records;
  Emit(opt, RenderReport(opt, report));
  PrintCounters(ledger, std::chrono::steady_clock::now() - start);
  return kExitOk;
}

int RunSweep(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const fa::EntitySet entities = fa::ParseEntities(opt.entities);
  const fa::AuditConfig config = BuildConfig(opt);
  const fa::Corpus corpus = fa::LoadCorpus(opt.input, entities);
  const std::vector<double> c_values = ParseReals(opt.c_theta_grid, "--c-theta-grid");
  const std::vector<double> r_values = ParseReals(opt.trigger_grid, "--trigger-grid");
  auto provider = BuildProvider(opt, entities, true);
  fa::RunLedger ledger;
  const std::vector<fa::SweepRow> rows = fa::SweepThresholds(
      corpus, entities, config, c_values, r_values, *provider, &ledger);
  Emit(opt, opt.format == "csv" ? fa::RenderSweepCsv(rows)
                                : fa::RenderSweepJson(rows, config));
  PrintCounters(ledger, std::chrono::steady_clock::now() - start);
  return kExitOk;
}

int RunVerify(const Options& opt) {
  const fa::AuditReport report = LoadReport(opt.input);
  const fa::OracleVerdict verdict = fa::OracleRecompute(report);
  if (verdict.pass) {
    fmt::print("oracle: PASS ({} values checked, {} records)\n",
               verdict.checked, report.records.size());
    return kExitOk;
  }
  fmt::print("oracle: FAIL ({} of {} values disagree)\n",
             verdict.mismatches.size(), verdict.checked);
  for (const auto& m : verdict.mismatches) fmt::print("  {}\n", m.Describe());
  return kExitOracle;
}

void AddCommon(CLI::App* cmd, Options& opt, bool corpus_input) {
  cmd->add_option("--input", opt.input,
                  corpus_input ? "Corpus file (JSON lines)" : "Report file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out, "Output path (default stdout)");
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void AddRunFlags(CLI::App* cmd, Options& opt, bool with_entities) {
  if (with_entities) {
    cmd->add_option("--entities", opt.entities,
                    "Comma-separated entities or a file with one per line")
        ->required();
  }
  cmd->add_option("--provider", opt.provider, "Scoring backend")
      ->check(CLI::IsMember({"http", "replay", "synthetic"}));
  cmd->add_option("--fixture", opt.fixture, "Replay fixture file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--endpoint", opt.endpoint,
                  "HTTP endpoint JSON (credential from $" +
                      std::string(fa::kApiKeyEnv) + ")")
      ->check(CLI::ExistingFile);
  cmd->add_option("--config", opt.config_path,
                  "AuditConfig JSON, or a report whose config is reused")
      ->check(CLI::ExistingFile);
  cmd->add_option("--temperature", opt.temperature, "Sampling temperature (default 0)");
  cmd->add_option("--c-theta", opt.c_theta, "Clip constant (default 0.25)");
  cmd->add_option("--lambda", opt.lambda, "Local/global mix (default 0.5)");
  cmd->add_option("--trigger", opt.trigger, "Mitigation threshold (default 0.35)");
  cmd->add_option("--prior-mode", opt.prior_mode, "Global prior")
      ->check(CLI::IsMember({"mean-ebv", "mean-variance"}));
  cmd->add_option("--offsets", opt.offsets, "Comma-separated offset pattern");
  cmd->add_option("--seed", opt.seed, "Synthetic provider seed");
  cmd->add_option("--synthetic-bias", opt.synthetic_bias,
                  "Per-entity score shift for the synthetic provider");
  cmd->add_option("--synthetic-noise", opt.synthetic_noise,
                  "Uniform noise half-width for the synthetic provider");
  cmd->add_option("--synthetic-mitigation-scale",
                  opt.synthetic_mitigation_scale,
                  "Fraction of the entity shift kept in mitigated scores");
  cmd->add_option("--provenance", opt.provenance, "Note stored in the report");
  cmd->add_option("--workers", opt.workers, "Concurrent provider calls (0 = provider limit)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual entity-bias audit for toxicity scorers"};
  app.set_version_flag("--version", std::string(FAIRAUDIT_VERSION));
  app.require_subcommand(1);

  Options opt;
  auto* detect = app.add_subcommand("detect", "Score a corpus and flag biased records");
  AddCommon(detect, opt, true);
  AddRunFlags(detect, opt, true);
  auto* mitigate = app.add_subcommand("mitigate", "Mitigate the flagged records of a detect report");
  AddCommon(mitigate, opt, false);
  AddRunFlags(mitigate, opt, false);
  auto* evaluate = app.add_subcommand("evaluate", "Fairness summary from pre-recorded scores");
  AddCommon(evaluate, opt, true);
  AddRunFlags(evaluate, opt, true);
  auto* pipeline = app.add_subcommand("pipeline", "Detect, mitigate and evaluate");
  AddCommon(pipeline, opt, true);
  AddRunFlags(pipeline, opt, true);
  auto* sweep = app.add_subcommand("sweep", "Grid over c_theta and trigger threshold");
  AddCommon(sweep, opt, true);
  AddRunFlags(sweep, opt, true);
  sweep->add_option("--c-theta-grid", opt.c_theta_grid, "Comma-separated c_theta values");
  sweep->add_option("--trigger-grid", opt.trigger_grid, "Comma-separated thresholds");
  auto* verify = app.add_subcommand("verify", "Recompute a report independently");
  verify->add_option("--input", opt.input, "Report file")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (detect->parsed()) {
      return RunAudit(opt, "detect", fa::MitigationPolicy::kNone);
    }
    if (mitigate->parsed()) return RunMitigate(opt);
    if (evaluate->parsed()) {
      return RunAudit(opt, "evaluate", fa::MitigationPolicy::kNone);
    }
    if (pipeline->parsed()) {
      return RunAudit(opt, "pipeline", fa::MitigationPolicy::kTriggered);
    }
    if (sweep->parsed()) return RunSweep(opt);
    return RunVerify(opt);
  } catch (const fa::AuditError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    const bool provider_side = e.is_provider_error() ||
                               e.code() == fa::ErrorCode::kPipelineAborted;
    return provider_side ? kExitProvider : kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  }
}
