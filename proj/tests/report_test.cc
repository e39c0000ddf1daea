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

#include "fairaudit/report.h"

#include <algorithm>

#include "example_data.h"
#include "fairaudit/pipeline.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairaudit {
namespace {

using testing::CodeOf;

AuditReport Example(MitigationPolicy policy) {
  ReplayProvider provider(example::LoadFixture());
  PipelineOptions options;
  options.policy = policy;
  options.provenance = "replay fixture fixture.txt";
  return RunPipeline(example::LoadCorpus(), example::Entities(), AuditConfig{},
                     &provider, options);
}

TEST(ReportJsonTest, RoundTripIsLossless) {
  for (auto policy : {MitigationPolicy::kNone, MitigationPolicy::kTriggered}) {
    const AuditReport r = Example(policy);
    const std::string text = RenderReportJson(r);
    const AuditReport back = ReportFromJson(nlohmann::json::parse(text));
    EXPECT_EQ(RenderReportJson(back), text);
    EXPECT_EQ(back.config, r.config);
    ASSERT_EQ(back.records.size(), r.records.size());
    for (size_t n = 0; n < r.records.size(); ++n) {
      EXPECT_EQ(back.records[n].bias, r.records[n].bias);
      EXPECT_EQ(back.records[n].mitigation, r.records[n].mitigation);
    }
    EXPECT_EQ(back.after.has_value(), r.after.has_value());
  }
}

TEST(ReportJsonTest, CarriesSchemaAndProvenance) {
  const nlohmann::json j = ReportToJson(Example(MitigationPolicy::kTriggered));
  EXPECT_EQ(j.at("schema"), "fairaudit.report/1");
  EXPECT_EQ(j.at("provenance"), "replay fixture fixture.txt");
  EXPECT_EQ(j.at("entities").size(), 4u);
}

TEST(ReportJsonTest, RejectsWrongSchema) {
  nlohmann::json j = ReportToJson(Example(MitigationPolicy::kNone));
  j["schema"] = "something/2";
  EXPECT_EQ(CodeOf([&] { ReportFromJson(j); }), ErrorCode::kParseFailure);
}

TEST(ReportCsvTest, OneRowPerRecord) {
  const std::string csv = RenderReportCsv(Example(MitigationPolicy::kTriggered));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_NE(header.find("score:White people"), std::string::npos);
  EXPECT_NE(header.find("after:Blacks"), std::string::npos);
  const size_t columns = std::count(header.begin(), header.end(), ',');
  size_t start = header.size() + 1;
  while (start < csv.size()) {
    const size_t end = csv.find('\n', start);
    const std::string row = csv.substr(start, end - start);
    EXPECT_EQ(static_cast<size_t>(std::count(row.begin(), row.end(), ',')),
              columns);
    start = end + 1;
  }
}

TEST(CsvFieldTest, Quoting) {
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(CsvField("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(CsvField(""), "");
}

}  // namespace
}  // namespace fairaudit
