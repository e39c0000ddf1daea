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

#include "fairaudit/mitigation.h"

#include <deque>
#include <random>

#include "example_data.h"
#include "fairaudit/bias_detect.h"
#include "fairaudit/stats.h"
#include "gtest/gtest.h"
#include "test_oracles.h"
#include "test_util.h"

namespace fairaudit {
namespace {

using testing::CodeOf;
using testing::Probs;

void ExpectValues(const std::vector<Probability>& got,
                  const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(got[i].value(), want[i], 1e-12) << "position " << i;
  }
}

// Answers from a script; an entry that is an AuditError code is thrown.
class ScriptedProvider : public ScoreProvider {
 public:
  struct Step {
    std::string text;
    std::optional<ErrorCode> error;
  };
  ScriptedProvider(std::initializer_list<Step> steps) : steps_(steps) {}

  Completion Complete(const CompletionRequest& request) override {
    requests.push_back(request);
    if (steps_.empty()) throw AuditError(ErrorCode::kFixtureMiss, "script done");
    Step step = steps_.front();
    steps_.pop_front();
    if (step.error) throw AuditError(*step.error, "scripted");
    return {step.text, EstimateUsage(request, step.text)};
  }
  std::string name() const override { return "scripted"; }

  std::vector<CompletionRequest> requests;

 private:
  std::deque<Step> steps_;
};

TEST(OffsetsTest, Examples) {
  const AuditConfig d;
  ExpectValues(ApplyDeterministicOffsets(Probability(0.72), 3, d),
               {0.71, 0.72, 0.73});
  ExpectValues(ApplyDeterministicOffsets(Probability(0.02), 3, d),
               {0.02, 0.02, 0.03});
  ExpectValues(ApplyDeterministicOffsets(Probability(0.50), 6, d),
               {0.49, 0.50, 0.51, 0.49, 0.50, 0.51});
}

TEST(OffsetsTest, SpreadForSmallK) {
  const AuditConfig d;
  for (int cents = 3; cents <= 97; ++cents) {
    const Probability base(cents / 100.0);
    EXPECT_NEAR(Spread(ApplyDeterministicOffsets(base, 1, d)), 0.0, 1e-12);
    EXPECT_NEAR(Spread(ApplyDeterministicOffsets(base, 2, d)), 0.01, 1e-12);
    EXPECT_NEAR(Spread(ApplyDeterministicOffsets(base, 3, d)), 0.02, 1e-12);
  }
}

TEST(OffsetsTest, VarianceOfThreeOffsets) {
  const auto out = ApplyDeterministicOffsets(Probability(0.6), 3, AuditConfig{});
  EXPECT_NEAR(oracle::PairwiseVariance(std::vector<double>(Values(out))),
              2.0 / 3.0 * 1e-4, 1e-12);
  EXPECT_NEAR(oracle::PairwiseVariance(std::vector<double>(Values(out))),
              0.000069, 5e-6);
}

TEST(OffsetsTest, FollowsPositionsNotEntities) {
  AuditConfig c;
  c.offsets = {0.0, -0.01, 0.01};
  ExpectValues(ApplyDeterministicOffsets(Probability(0.72), 3, c),
               {0.72, 0.71, 0.73});
}

TEST(SpreadTest, Validation) {
  EXPECT_TRUE(ValidateSpread(Probs({0.71, 0.72, 0.73}), 0.02));
  EXPECT_FALSE(ValidateSpread(Probs({0.70, 0.73}), 0.02));
  EXPECT_TRUE(ValidateSpread(Probs({0.4}), 0.02));
  EXPECT_EQ(CodeOf([] { ValidateSpread({}, 0.02); }), ErrorCode::kEmptyInput);
}

TEST(LocalMitigateTest, Examples) {
  const AuditConfig d;
  const double base = (0.88 + 0.69 + 0.82) / 3.0;
  ExpectValues(LocalMitigate(Probs({0.88, 0.69, 0.82}), d),
               {base - 0.01, base, base + 0.01});
  EXPECT_NEAR(base, 0.796667, 1e-6);
  ExpectValues(LocalMitigate(Probs({0.5, 0.5, 0.5}), d), {0.49, 0.50, 0.51});
  ExpectValues(LocalMitigate(Probs({0.0, 0.0}), d), {0.02, 0.02});
  EXPECT_EQ(CodeOf([&] { LocalMitigate({}, d); }), ErrorCode::kEmptyInput);
}

TEST(MitigateRecordTest, ProviderAnswerAccepted) {
  ScriptedProvider provider({{"reasoning...\n[0.72, 0.71, 0.73]", {}}});
  const SentenceTemplate tmpl("s", "<ENT> moved in next door");
  const EntitySet entities({"Black", "White", "Immigrant"});
  TokenUsage usage;
  const MitigationResult r =
      MitigateRecord(tmpl, entities, provider, AuditConfig{},
                     Probs({0.88, 0.69, 0.82}), &usage);
  EXPECT_EQ(r.source, MitigationSource::kProvider);
  EXPECT_TRUE(r.valid);
  EXPECT_NEAR(r.spread, 0.02, 1e-12);
  ExpectValues(r.adjusted, {0.72, 0.71, 0.73});
  EXPECT_EQ(r.raw_response, "reasoning...\n[0.72, 0.71, 0.73]");
  EXPECT_EQ(provider.requests.size(), 1u);
  EXPECT_EQ(provider.requests[0].temperature, 0.0);
  EXPECT_GT(usage.prompt_tokens, 0);
}

TEST(MitigateRecordTest, TwoBadAnswersFallBack) {
  ScriptedProvider provider({{"I cannot help with that.", {}},
                             {"Still no list here.", {}}});
  const MitigationResult r = MitigateRecord(
      SentenceTemplate("s", "<ENT> x"), EntitySet({"A", "B", "C"}), provider,
      AuditConfig{}, Probs({0.88, 0.69, 0.82}));
  EXPECT_EQ(r.source, MitigationSource::kLocalFallback);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(provider.requests.size(), 2u);
  ExpectValues(r.adjusted, Values(LocalMitigate(Probs({0.88, 0.69, 0.82}),
                                                AuditConfig{})));
}

TEST(MitigateRecordTest, RetryRecoversFromOneBadAnswer) {
  ScriptedProvider provider({{"[0.10, 0.90]", {}}, {"[0.50, 0.51]", {}}});
  const MitigationResult r =
      MitigateRecord(SentenceTemplate("s", "<ENT> x"), EntitySet({"A", "B"}),
                     provider, AuditConfig{}, Probs({0.1, 0.9}));
  EXPECT_EQ(r.source, MitigationSource::kProvider);
  ExpectValues(r.adjusted, {0.50, 0.51});
}

TEST(MitigateRecordTest, OutOfClampAndProviderErrorsFallBack) {
  ScriptedProvider provider({{"[0.99, 0.99]", {}},
                             {"", ErrorCode::kNetworkError}});
  const MitigationResult r =
      MitigateRecord(SentenceTemplate("s", "<ENT> x"), EntitySet({"A", "B"}),
                     provider, AuditConfig{}, Probs({0.97, 0.99}));
  EXPECT_EQ(r.source, MitigationSource::kLocalFallback);
  for (const auto& p : r.adjusted) {
    EXPECT_GE(p.value(), 0.02);
    EXPECT_LE(p.value(), 0.98);
  }
}

TEST(MitigateRecordTest, NoScoresAndNoProviderAnswerIsUnavailable) {
  ScriptedProvider provider({{"nothing", {}}, {"nothing", {}}});
  EXPECT_EQ(CodeOf([&] {
              MitigateRecord(SentenceTemplate("s", "<ENT> x"),
                             EntitySet({"A", "B"}), provider, AuditConfig{},
                             {});
            }),
            ErrorCode::kProviderUnavailable);
}

TEST(MitigateRecordTest, WrongScoreCount) {
  ScriptedProvider provider({});
  EXPECT_EQ(CodeOf([&] {
              MitigateRecord(SentenceTemplate("s", "<ENT> x"),
                             EntitySet({"A", "B"}), provider, AuditConfig{},
                             Probs({0.1, 0.2, 0.3}));
            }),
            ErrorCode::kLengthMismatch);
}

TEST(MitigateRecordTest, ExampleReplayGivesUniformAfterVariance) {
  ReplayProvider provider(example::LoadFixture());
  const auto corpus = example::LoadCorpus();
  const auto records = example::Records();
  for (size_t n = 0; n < corpus.size(); ++n) {
    const MitigationResult r =
        MitigateRecord(corpus[n].tmpl, example::Entities(), provider,
                       AuditConfig{}, records[n].entity_scores);
    EXPECT_EQ(r.source, MitigationSource::kProvider);
    const EntityRecord after =
        MakeEntityRecord(records[n].template_id, records[n].baseline, r.adjusted);
    EXPECT_NEAR(SentenceBias(after), example::kSfvAfterMean, 1e-6);
  }
}

TEST(MitigateRecordTest, RandomFallbackRunsKeepInvariants) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> k_dist(2, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = k_dist(rng);
    std::vector<std::string> names;
    std::vector<double> scores;
    for (int i = 0; i < k; ++i) {
      names.push_back("e" + std::to_string(i));
      scores.push_back(u(rng));
    }
    ScriptedProvider provider({{"no", {}}, {"", ErrorCode::kRateLimited}});
    const MitigationResult r =
        MitigateRecord(SentenceTemplate("s", "<ENT> y"), EntitySet(names),
                       provider, AuditConfig{}, Probs(scores));
    EXPECT_EQ(r.source, MitigationSource::kLocalFallback);
    for (const auto& p : r.adjusted) {
      EXPECT_GE(p.value(), 0.02);
      EXPECT_LE(p.value(), 0.98);
    }
    EXPECT_EQ(r.valid, r.spread <= 0.02 + kSpreadSlack);
    EXPECT_TRUE(r.valid);
  }
}

}  // namespace
}  // namespace fairaudit
