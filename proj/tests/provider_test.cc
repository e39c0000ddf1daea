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

#include <filesystem>
#include <thread>

#include "example_data.h"
#include "fairaudit/bias_detect.h"
#include "fairaudit/parse.h"
#include "fairaudit/prompts.h"
#include "fairaudit/provider.h"
#include "fairaudit/replay_provider.h"
#include "fairaudit/synthetic_provider.h"
#include "gtest/gtest.h"
#include "test_oracles.h"
#include "test_util.h"

namespace fairaudit {
namespace {

using testing::CodeOf;

CompletionRequest DetectionRequest(const std::string& sentence,
                                   double temperature = 0.0) {
  const PromptBundle p = BuildDetectionPrompt(sentence);
  return {p.system_text, p.user_text, temperature};
}

TEST(FingerprintTest, KnownDigests) {
  // Reference digests computed with an independent SHA-256 implementation.
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Fingerprint({"sys\nline", "user text", 0.0}),
            "b73c0ef7c9e51030595440658b4dfd9da2be2ae053d6a61b207bd739b4e16aab");
  EXPECT_EQ(Fingerprint({"sys\nline", "user text", 0.7}),
            "3c940796db9caae2b900595614b04c3d1453d691cca67ce969157ed281655278");
}

TEST(FingerprintTest, LineEndingsAreCanonical) {
  EXPECT_EQ(Fingerprint({"a\r\nb", "c\rd", 0.0}),
            Fingerprint({"a\nb", "c\nd", 0.0}));
  EXPECT_NE(Fingerprint({"a b", "c", 0.0}), Fingerprint({"a  b", "c", 0.0}));
}

TEST(FingerprintTest, FieldsCannotBleedIntoEachOther) {
  EXPECT_NE(Fingerprint({"ab", "c", 0.0}), Fingerprint({"a", "bc", 0.0}));
  EXPECT_NE(Fingerprint({"a", "b", 0.0}), Fingerprint({"a", "b", 0.5}));
}

TEST(EstimateUsageTest, QuarterOfCharacters) {
  const TokenUsage u = EstimateUsage({"12345678", "1234", 0.0}, "123456789");
  EXPECT_EQ(u.prompt_tokens, 3);
  EXPECT_EQ(u.completion_tokens, 3);
  EXPECT_TRUE(u.estimated);
}

TEST(ReplayProviderTest, ExampleBaselineAndVariants) {
  ReplayProvider provider(example::LoadFixture());
  const auto corpus = example::LoadCorpus();
  const SentenceTemplate& r1 = corpus.front().tmpl;
  EXPECT_EQ(provider.Complete(DetectionRequest(r1.text())).text,
            "Probability: {0.88}");
  std::vector<double> got;
  for (const auto& e : example::kEntities) {
    got.push_back(
        ParseProbability(provider.Complete(DetectionRequest(Instantiate(r1, e))).text)
            .value());
  }
  EXPECT_EQ(got, (std::vector<double>{0.92, 0.95, 0.93, 0.01}));
}

TEST(ReplayProviderTest, MissNamesFingerprintAndExcerpt) {
  ReplayProvider provider(example::LoadFixture());
  const CompletionRequest request = DetectionRequest("an unknown sentence");
  try {
    provider.Complete(request);
    FAIL() << "expected FixtureMiss";
  } catch (const AuditError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFixtureMiss);
    EXPECT_NE(std::string(e.what()).find(Fingerprint(request)), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("an unknown sentence"), std::string::npos);
  }
}

TEST(ReplayProviderTest, TemperatureSelectsADifferentEntry) {
  ReplayProvider provider(example::LoadFixture());
  const std::string sentence = example::LoadCorpus().front().tmpl.text();
  EXPECT_NO_THROW(provider.Complete(DetectionRequest(sentence, 0.0)));
  EXPECT_EQ(CodeOf([&] { provider.Complete(DetectionRequest(sentence, 0.7)); }),
            ErrorCode::kFixtureMiss);
}

TEST(ReplayFixtureTest, SerializeParseRoundTrip) {
  ReplayFixture fixture("unit", "hand written");
  fixture.Add({"sys", "first\r\nprompt", 0.0}, "Probability: {0.50}");
  fixture.Add({"sys", "second", 0.3}, "line one\n\nline three\n[0.1, 0.2]");
  fixture.Add({"sys", "third", 0.0}, "");
  const ReplayFixture back = ReplayFixture::Parse(fixture.Serialize());
  EXPECT_EQ(back.name(), "unit");
  EXPECT_EQ(back.source(), "hand written");
  EXPECT_EQ(back.entries(), fixture.entries());
  EXPECT_EQ(back.Serialize(), fixture.Serialize());
}

TEST(ReplayFixtureTest, CrlfFileParsesTheSame) {
  ReplayFixture fixture("unit", "crlf");
  fixture.Add({"s", "u", 0.0}, "a\nb");
  std::string text = fixture.Serialize();
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  EXPECT_EQ(ReplayFixture::Parse(crlf).entries(), fixture.entries());
}

TEST(ReplayFixtureTest, RejectsDuplicatesAndMarkers) {
  ReplayFixture fixture("unit", "");
  fixture.Add({"s", "u", 0.0}, "x");
  EXPECT_EQ(CodeOf([&] { fixture.Add({"s", "u", 0.0}, "y"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { fixture.Add({"s", "v", 0.0}, "ok\n=== not allowed"); }),
            ErrorCode::kInvalidArgument);
}

TEST(ReplayFixtureTest, MalformedFilesAreRejected) {
  EXPECT_THROW(ReplayFixture::Parse("=== nothex\n---\nx\n"), AuditError);
  EXPECT_THROW(ReplayFixture::Parse("garbage header\n"), AuditError);
  const std::string fp(64, 'a');
  EXPECT_THROW(ReplayFixture::Parse("=== " + fp + "\nexcerpt: x\n"), AuditError);
  EXPECT_THROW(ReplayFixture::Load("/nonexistent/fixture.txt"), AuditError);
}

TEST(ReplayProviderTest, SafeUnderConcurrentLookups) {
  ReplayProvider provider(example::LoadFixture());
  const auto corpus = example::LoadCorpus();
  std::vector<std::jthread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 200; ++i) {
        const auto& tmpl = corpus[i % corpus.size()].tmpl;
        if (!provider.Complete(DetectionRequest(tmpl.text())).text.empty()) ++ok;
      }
    });
  }
  threads.clear();
  EXPECT_EQ(ok.load(), 1600);
}

BiasProfile Profile(std::vector<double> bias, double noise = 0.0,
                    uint64_t seed = 7) {
  BiasProfile p;
  p.entities = example::kEntities;
  p.entity_bias = std::move(bias);
  p.noise = noise;
  p.seed = seed;
  return p;
}

std::vector<EntityRecord> ScoreWith(ScoreProvider& provider) {
  std::vector<EntityRecord> records;
  for (const auto& entry : example::LoadCorpus()) {
    const Probability base =
        ParseProbability(provider.Complete(DetectionRequest(entry.tmpl.text())).text);
    std::vector<Probability> scores;
    for (const auto& e : example::kEntities) {
      scores.push_back(ParseProbability(
          provider.Complete(DetectionRequest(Instantiate(entry.tmpl, e))).text));
    }
    records.push_back(MakeEntityRecord(entry.tmpl.id(), base, scores));
  }
  return records;
}

TEST(SyntheticProviderTest, ZeroBiasZeroNoiseGivesNoSentenceBias) {
  SyntheticProvider provider(Profile({0, 0, 0, 0}));
  for (const auto& r : ScoreWith(provider)) {
    EXPECT_EQ(SentenceBias(r), 0.0);
    for (const auto& p : r.entity_scores) EXPECT_EQ(p, r.baseline);
  }
}

TEST(SyntheticProviderTest, OneShiftedEntityMatchesAnalyticVariance) {
  // Scores base + 0.3 for entity 0 only, unclamped because base <= 0.70:
  // sensitivities [0.3, 0, 0, 0], variance 0.09 * 3 / 16.
  SyntheticProvider provider(Profile({0.3, 0, 0, 0}));
  const auto records = ScoreWith(provider);
  for (const auto& r : records) {
    EXPECT_NEAR(SentenceBias(r), 0.09 * 3.0 / 16.0, 1e-12);
  }
  // A constant shift leaves every column without variance.
  for (double v : EntityBiases(SensitivityMatrix::FromRecords(records))) {
    EXPECT_NEAR(v, 0.0, 1e-24);
  }
}

TEST(SyntheticProviderTest, ClampedShiftMakesTheEntityColumnDominate) {
  BiasProfile profile = Profile({0.3, 0, 0, 0});
  profile.base_low = 0.50;
  profile.base_high = 0.95;
  SyntheticProvider provider(profile);
  const auto records = ScoreWith(provider);
  // sigma for entity 0 is min(0.3, 1 - base); all other columns are zero.
  std::vector<double> expected_col;
  for (const auto& entry : example::LoadCorpus()) {
    const double base = provider.BaseScore(entry.tmpl.text());
    expected_col.push_back(std::min(0.3, 1.0 - base));
  }
  const auto theta_e = EntityBiases(SensitivityMatrix::FromRecords(records));
  EXPECT_NEAR(theta_e[0], oracle::PairwiseVariance(expected_col), 1e-12);
  EXPECT_GT(theta_e[0], 0.0);
  for (size_t k = 1; k < 4; ++k) EXPECT_EQ(theta_e[k], 0.0);
}

TEST(SyntheticProviderTest, SameSeedSameBytes) {
  SyntheticProvider a(Profile({0.1, -0.05, 0.2, 0}, 0.05, 42));
  SyntheticProvider b(Profile({0.1, -0.05, 0.2, 0}, 0.05, 42));
  SyntheticProvider c(Profile({0.1, -0.05, 0.2, 0}, 0.05, 43));
  bool any_difference = false;
  for (const auto& entry : example::LoadCorpus()) {
    for (double t : {0.0, 0.7}) {
      const CompletionRequest req =
          DetectionRequest(Instantiate(entry.tmpl, "Jews"), t);
      EXPECT_EQ(a.Complete(req).text, b.Complete(req).text);
      any_difference |= a.Complete(req).text != c.Complete(req).text;
    }
    const PromptBundle m = BuildMitigationPrompt(entry.tmpl, example::Entities());
    EXPECT_EQ(a.Complete({m.system_text, m.user_text, 0.0}).text,
              b.Complete({m.system_text, m.user_text, 0.0}).text);
  }
  EXPECT_TRUE(any_difference);
}

TEST(SyntheticProviderTest, MitigationAnswerIsWellFormed) {
  SyntheticProvider provider(Profile({0.4, 0, 0, -0.2}));
  for (const auto& entry : example::LoadCorpus()) {
    const PromptBundle m = BuildMitigationPrompt(entry.tmpl, example::Entities());
    const auto list = ParseProbabilityList(
        provider.Complete({m.system_text, m.user_text, 0.0}).text, 4);
    const double base = provider.BaseScore(entry.tmpl.text());
    EXPECT_NEAR(list[0].value(), std::clamp(base - 0.01, 0.02, 0.98), 1e-9);
    EXPECT_NEAR(list[1].value(), std::clamp(base, 0.02, 0.98), 1e-9);
  }
}

TEST(SyntheticProviderTest, UnknownPromptIsMalformed) {
  SyntheticProvider provider(Profile({0, 0, 0, 0}));
  EXPECT_EQ(CodeOf([&] { provider.Complete({"s", "hello", 0.0}); }),
            ErrorCode::kMalformedResponse);
}

TEST(SyntheticProviderTest, ProfileValidation) {
  EXPECT_EQ(CodeOf([] { SyntheticProvider(Profile({0.1})); }),
            ErrorCode::kInvalidArgument);
  BiasProfile p = Profile({0, 0, 0, 0});
  p.noise = -1;
  EXPECT_EQ(CodeOf([&] { SyntheticProvider{p}; }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace fairaudit
