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

#include <cmath>

#include "reference/reference.hpp"
#include "svdlut/analysis.hpp"
#include "test_util.hpp"

namespace svdlut::analysis {
namespace {

using namespace testing_util;

Image constant(int w, int h, float r, float g, float b) {
  Image img(w, h);
  for (int c = 0; c < 3; ++c)
    for (float& v : img.channel(c)) v = c == 0 ? r : (c == 1 ? g : b);
  return img;
}

Image gray_ramp(int w, int h) {
  Image img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) img.at(c, x, y) = static_cast<float>(y * w + x) / (w * h - 1);
  return img;
}

TEST(Utilization, ConstantImage) {
  const Image img = constant(10, 10, 0.3f, 0.6f, 0.9f);
  EXPECT_DOUBLE_EQ(utilization_rate(img, 33, LutMode::k3D), 8.0 / 35937.0 * 100.0);
  EXPECT_DOUBLE_EQ(utilization_rate(img, 33, LutMode::k2D), 12.0 / (3 * 33 * 33) * 100.0);
  EXPECT_DOUBLE_EQ(utilization_rate(img, 33, LutMode::k1D), 6.0 / 99.0 * 100.0);
}

TEST(Utilization, MatchesHashSetCounter) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const int d = rng.integer(2, 33);
    const Image img = rand_image(rng, rng.integer(1, 30), rng.integer(1, 30));
    EXPECT_NEAR(utilization_rate(img, d, LutMode::k3D), ref::utilization(img, d, ref::Mode::k3D), 1e-12);
    EXPECT_NEAR(utilization_rate(img, d, LutMode::k2D), ref::utilization(img, d, ref::Mode::k2D), 1e-12);
    EXPECT_NEAR(utilization_rate(img, d, LutMode::k1D), ref::utilization(img, d, ref::Mode::k1D), 1e-12);
  }
}

TEST(Utilization, BadDim) {
  EXPECT_THROW(utilization_rate(constant(2, 2, 0, 0, 0), 1, LutMode::k3D), Error);
}

TEST(Occurrence, ProjectionsAreConsistent) {
  Rng rng(2);
  OccurrenceMap map(9);
  map.ingest(rand_image(rng, 20, 15));
  EXPECT_EQ(map.total(), 8u * 300);
  for (LutPair pair : {LutPair::kRG, LutPair::kRB, LutPair::kGB}) {
    const auto proj = map.projection(pair);
    std::uint64_t sum = 0;
    for (auto v : proj) sum += v;
    EXPECT_EQ(sum, map.total());
  }
  // Marginal of r agrees across the rg and rb projections.
  const auto rg = map.projection(LutPair::kRG);
  const auto rb = map.projection(LutPair::kRB);
  for (int i = 0; i < 9; ++i) {
    std::uint64_t a = 0, b = 0;
    for (int j = 0; j < 9; ++j) {
      a += rg[i * 9 + j];
      b += rb[i * 9 + j];
    }
    EXPECT_EQ(a, b);
  }
}

TEST(Occurrence, MergeIsAdditive) {
  Rng rng(3);
  const std::vector<Image> imgs = {rand_image(rng, 5, 5), rand_image(rng, 3, 8)};
  OccurrenceMap a(7), b(7);
  a.ingest(imgs[0]);
  b.ingest(imgs[1]);
  a.merge(b);
  const OccurrenceMap both = occurrence_stats(imgs, 7);
  EXPECT_TRUE(std::equal(a.cube().begin(), a.cube().end(), both.cube().begin()));
  EXPECT_THROW(a.merge(OccurrenceMap(5)), Error);
}

TEST(Occurrence, GrayRampConcentratesOnDiagonal) {
  const OccurrenceMap map = occurrence_stats(std::vector<Image>{gray_ramp(64, 64)}, 33);
  for (LutPair pair : {LutPair::kRG, LutPair::kRB, LutPair::kGB}) {
    const auto proj = map.projection(pair);
    std::uint64_t near = 0, total = 0;
    for (int i = 0; i < 33; ++i)
      for (int j = 0; j < 33; ++j) {
        total += proj[i * 33 + j];
        if (std::abs(i - j) <= 1) near += proj[i * 33 + j];
      }
    EXPECT_GE(static_cast<double>(near) / total, 0.95);
  }
}

TEST(Heatmap, ScalesPeakToFullRange) {
  const std::vector<std::uint64_t> proj = {0, 5, 10, 2};
  const auto pgm = heatmap_pgm(proj, 2);
  const std::string header = "P5\n2 2\n65535\n";
  ASSERT_EQ(pgm.size(), header.size() + 8);
  const std::uint8_t* px = pgm.data() + header.size();
  EXPECT_EQ((px[4] << 8) | px[5], 65535);
  EXPECT_EQ((px[2] << 8) | px[3], 32768);
  EXPECT_EQ((px[0] << 8) | px[1], 0);
}

TEST(Psnr, AnalyticOffset) {
  Rng rng(4);
  Image a = rand_image(rng, 16, 16);
  for (float& v : a.data()) v *= 0.8f;
  Image b = a;
  for (float& v : b.data()) v += 0.1f;
  EXPECT_NEAR(psnr(a, b), 20.0, 1e-5);
  EXPECT_EQ(psnr(a, b), psnr(b, a));
  EXPECT_TRUE(std::isinf(psnr(a, a)));
}

TEST(Psnr, MatchesLongDoubleReference) {
  Rng rng(5);
  const Image a = rand_image(rng, 31, 17);
  const Image b = rand_image(rng, 31, 17);
  EXPECT_NEAR(psnr(a, b), static_cast<double>(ref::psnr(a, b)), 1e-9);
  EXPECT_THROW(psnr(a, rand_image(rng, 17, 31)), Error);
}

TEST(DeltaE, WhiteBlackAndSymmetry) {
  const Image white = constant(3, 2, 1, 1, 1);
  const Image black = constant(3, 2, 0, 0, 0);
  EXPECT_NEAR(delta_e_ab(white, black), 100.0, 1e-3);
  Rng rng(6);
  const Image a = rand_image(rng, 9, 9);
  const Image b = rand_image(rng, 9, 9);
  EXPECT_DOUBLE_EQ(delta_e_ab(a, b), delta_e_ab(b, a));
  EXPECT_EQ(delta_e_ab(a, a), 0.0);
}

TEST(DeltaE, MatchesPublishedWhitePointReference) {
  Rng rng(7);
  const Image a = rand_image(rng, 20, 20);
  const Image b = rand_image(rng, 20, 20);
  // The two white points differ in the fifth digit.
  EXPECT_NEAR(delta_e_ab(a, b), ref::delta_e(a, b), 1e-2);
  EXPECT_NEAR(delta_e_ab(constant(1, 1, 1, 0, 0), constant(1, 1, 0, 0, 1)),
              ref::delta_e(constant(1, 1, 1, 0, 0), constant(1, 1, 0, 0, 1)), 1e-2);
}

}  // namespace
}  // namespace svdlut::analysis
