// Copyright 2026 The svdlut Authors
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


#include <gtest/gtest.h>

#include <algorithm>

#include "svdlut/bench.hpp"

namespace svdlut::bench {
namespace {

std::size_t expected_rows(Pipeline p) { return p == Pipeline::kNaive ? 8 : 6; }

TEST(Resolution, Parsing) {
  EXPECT_EQ(parse_resolution("480p").width, 854);
  EXPECT_EQ(parse_resolution("4k").height, 2160);
  const auto r = parse_resolution("64x48");
  EXPECT_EQ(r.width, 64);
  EXPECT_EQ(r.height, 48);
  EXPECT_EQ(r.label(), "64x48");
  for (const char* bad : {"1x8", "8x0", "x8", "64", "64x", "abcx2", "-4x4"}) {
    try {
      parse_resolution(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadResolution) << bad;
    }
  }
}

TEST(RunSuite, RejectsBadOptions) {
  const auto model = net::random_init(1);
  BenchOptions options;
  options.resolutions = {{32, 32}};
  options.reps = 2;
  EXPECT_THROW(run_suite(model, options), Error);
  options.reps = 3;
  options.resolutions = {{1, 32}};
  try {
    run_suite(model, options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadResolution);
  }
}

TEST(RunSuite, MinimalRunReportsEveryStage) {
  const auto model = net::random_init(2);
  BenchOptions options;
  options.resolutions = {{48, 32}, {96, 64}};
  options.reps = 3;
  for (Pipeline pipeline : {Pipeline::kNaive, Pipeline::kFused}) {
    options.pipeline = pipeline;
    const BenchReport report = run_suite(model, options);
    ASSERT_EQ(report.results.size(), 2u);
    for (const auto& result : report.results) {
      EXPECT_LE(result.max_abs_diff, kEquivalenceTolerance);
      const std::vector<std::string_view> expected =
          pipeline == Pipeline::kNaive
              ? std::vector<std::string_view>{kBackbone, kGridGen, kLutGen, kSlicing,
                                              kLutTransform, kFusion, kPerPixel, kTotal}
              : std::vector<std::string_view>{kBackbone, kGridGen, kLutGen, kFusedStage,
                                              kPerPixel, kTotal};
      ASSERT_EQ(result.stages.size(), expected.size());
      double longest = 0.0;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto& s = result.stages[i];
        EXPECT_EQ(s.stage, expected[i]);
        EXPECT_GT(s.median_ms, 0.0) << s.stage;
        EXPECT_LE(s.p10_ms, s.median_ms);
        EXPECT_LE(s.median_ms, s.p90_ms);
        if (s.stage != kTotal) longest = std::max(longest, s.median_ms);
      }
      EXPECT_GE(result.stage(kTotal).median_ms, longest);
    }

    const std::string csv = to_csv_rows(report);
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    EXPECT_EQ(rows, static_cast<long>(2 * expected_rows(pipeline)));
    EXPECT_NE(csv.find(std::string(to_string(pipeline)) + ",96x64,total,"), std::string::npos);
  }
}

}  // namespace
}  // namespace svdlut::bench
