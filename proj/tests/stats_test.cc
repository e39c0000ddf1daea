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

#include "fairaudit/stats.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "test_oracles.h"
#include "test_util.h"

namespace fairaudit::stats {
namespace {

using testing::CodeOf;

TEST(PopulationVarianceTest, ReferenceRecordR1) {
  EXPECT_NEAR(PopulationVariance(std::vector<double>{0.04, 0.07, 0.05, -0.87}),
              0.159969, 1e-6);
}

TEST(PopulationVarianceTest, ReferenceEntityColumn) {
  EXPECT_NEAR(
      PopulationVariance(std::vector<double>{0.07, -0.42, -0.85, 0.10, 0.05}),
      0.139160, 1e-6);
}

TEST(PopulationVarianceTest, ConstantVectorIsZero) {
  for (double c : {-0.7, 0.0, 0.33, 1.0}) {
    EXPECT_EQ(PopulationVariance(std::vector<double>{c, c, c}), 0.0);
  }
}

TEST(PopulationVarianceTest, EmptyInputIsAnError) {
  EXPECT_EQ(CodeOf([] { PopulationVariance({}); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([] { Mean({}); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([] { Quantile95({}); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([] { Mad({}); }), ErrorCode::kEmptyInput);
}

TEST(PopulationVarianceTest, MatchesPairwiseOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + trial % 17);
    for (double& x : v) x = u(rng);
    EXPECT_NEAR(PopulationVariance(v), oracle::PairwiseVariance(v), 1e-13);
    EXPECT_NEAR(Mean(v), oracle::Mean(v), 1e-15);
    EXPECT_NEAR(PopulationStd(v), oracle::PopulationStd(v), 1e-12);
  }
}

TEST(PopulationVarianceTest, ShiftAndScaleLaws) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + trial % 9);
    for (double& x : v) x = u(rng);
    const double base = PopulationVariance(v);
    const double c = 3.0 * u(rng);
    const double a = 4.0 * u(rng);
    std::vector<double> shifted = v;
    std::vector<double> scaled = v;
    for (double& x : shifted) x += c;
    for (double& x : scaled) x *= a;
    EXPECT_NEAR(PopulationVariance(shifted), base, 1e-9 * std::max(base, 1e-12) + 1e-15);
    EXPECT_NEAR(PopulationVariance(scaled), a * a * base,
                1e-9 * a * a * base + 1e-15);
  }
}

TEST(QuantileTest, OneToFive) {
  EXPECT_NEAR(Quantile95(std::vector<double>{1, 2, 3, 4, 5}), 4.8, 1e-12);
  EXPECT_NEAR(Quantile95(std::vector<double>{5, 3, 1, 4, 2}), 4.8, 1e-12);
}

TEST(QuantileTest, SingleElement) {
  EXPECT_EQ(Quantile95(std::vector<double>{0.42}), 0.42);
}

TEST(QuantileTest, RampIsAboveQ90AndInRange) {
  std::vector<double> ramp;
  for (int i = 1; i <= 100; ++i) ramp.push_back(i / 100.0);
  const double q95 = Quantile95(ramp);
  EXPECT_GE(q95, 0.95);
  EXPECT_LE(q95, 1.00);
  EXPECT_GE(q95, Quantile(ramp, 0.90));
}

TEST(QuantileTest, MatchesSelectionOracle) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + trial % 23);
    for (double& x : v) x = u(rng);
    for (double p : {0.0, 0.1, 0.5, 0.9, 0.95, 1.0}) {
      EXPECT_NEAR(Quantile(v, p), oracle::LinearQuantile(v, p), 1e-12);
    }
  }
}

TEST(QuantileTest, RejectsProbabilityOutsideUnitInterval) {
  EXPECT_EQ(CodeOf([] { Quantile(std::vector<double>{1.0}, 1.5); }),
            ErrorCode::kInvalidArgument);
}

TEST(MadTest, HandComputed) {
  EXPECT_EQ(Mad(std::vector<double>{1, 1, 2, 2, 4}), 1.0);
}

TEST(MadTest, ConstantIsZero) {
  EXPECT_EQ(Mad(std::vector<double>{0.3, 0.3, 0.3, 0.3}), 0.0);
}

TEST(MadTest, Symmetric) {
  for (double a : {0.1, 0.5, 2.0}) {
    EXPECT_NEAR(Mad(std::vector<double>{-a, 0.0, a}), a, 1e-15);
  }
}

TEST(MadTest, MatchesOracle) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 12);
    for (double& x : v) x = u(rng);
    EXPECT_NEAR(Mad(v), oracle::Mad(v), 1e-12);
    EXPECT_NEAR(Median(v), oracle::Median(v), 1e-12);
  }
}

}  // namespace
}  // namespace fairaudit::stats
