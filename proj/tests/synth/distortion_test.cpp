// Copyright 2026 The dgkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dgkit/synth/distortion.hpp"

#include <gtest/gtest.h>

#include "dgkit/error.hpp"
#include "support.hpp"

namespace dgkit {
namespace {

RasterImage gray(std::uint8_t v) { return RasterImage(64, 64, v); }

TEST(SeverityParams, NoiseAndHazeDefaults) {
  EXPECT_EQ(severity_params(Family::kNoise, Severity::kMinor), DistortionParams(NoiseParams{8}));
  EXPECT_EQ(severity_params(Family::kNoise, Severity::kModerate), DistortionParams(NoiseParams{20}));
  EXPECT_EQ(severity_params(Family::kNoise, Severity::kSevere), DistortionParams(NoiseParams{40}));
  EXPECT_EQ(severity_params(Family::kHaze, Severity::kSevere), DistortionParams(HazeParams{0.35, 235}));
}

TEST(SeverityParams, StrengthIsStrictlyMonotone) {
  for (Family f : degrading_families()) {
    const double s1 = strength(severity_params(f, Severity::kMinor));
    const double s2 = strength(severity_params(f, Severity::kModerate));
    const double s3 = strength(severity_params(f, Severity::kSevere));
    EXPECT_LT(s1, s2) << to_string(f);
    EXPECT_LT(s2, s3) << to_string(f);
    EXPECT_GT(s1, 0.0) << to_string(f);
  }
}

TEST(SeverityParams, CleanOrNoneIsAnInvalidCombination) {
  for (auto [f, s] : {std::pair{Family::kClean, Severity::kNone}, std::pair{Family::kClean, Severity::kMinor},
                      std::pair{Family::kBlur, Severity::kNone}}) {
    try {
      severity_params(f, s);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidCombination);
    }
  }
}

TEST(SeverityTable, OverrideReplacesPrimaryCoordinate) {
  SeverityTable table;
  table.override_primary(Family::kNoise, {5, 10, 15});
  EXPECT_EQ(table.params(Family::kNoise, Severity::kModerate), DistortionParams(NoiseParams{10}));
  table.override_primary(Family::kHaze, {0.9, 0.6, 0.3});
  EXPECT_EQ(std::get<HazeParams>(table.params(Family::kHaze, Severity::kSevere)).transmission, 0.3);
  // The defaults are untouched.
  EXPECT_EQ(severity_params(Family::kNoise, Severity::kModerate), DistortionParams(NoiseParams{20}));
}

TEST(SeverityTable, OverrideMustStayMonotone) {
  SeverityTable table;
  EXPECT_THROW(table.override_primary(Family::kNoise, {10, 5, 15}), Error);
  EXPECT_THROW(table.override_primary(Family::kBlur, {1, 1, 2}), Error);
  EXPECT_THROW(table.override_primary(Family::kHaze, {0.3, 0.6, 0.9}), Error);
  EXPECT_THROW(table.override_primary(Family::kClean, {1, 2, 3}), Error);
  EXPECT_EQ(table.params(Family::kNoise, Severity::kMinor), DistortionParams(NoiseParams{8}));
}

TEST(ApplyDistortion, CleanIsIdentity) {
  const RasterImage img = testing::test_image(64, 64, 1);
  EXPECT_EQ(apply_distortion(img, clean_spec()), img);
}

TEST(ApplyDistortion, HazeOnGrayIsAnalytic) {
  DistortionSpec spec;
  spec.label = {Family::kHaze, std::string(default_subtype(Family::kHaze))};
  spec.severity = Severity::kModerate;
  spec.params = HazeParams{0.5, 235};
  const RasterImage out = apply_distortion(gray(128), spec);
  for (std::uint8_t v : out.samples()) ASSERT_EQ(v, 182);
  EXPECT_EQ(ops::haze(gray(128), 0.5, 235), out);
}

TEST(ApplyDistortion, NoiseIsDeterministic) {
  const RasterImage img = testing::test_image(64, 64, 2);
  DistortionSpec spec;
  spec.label = {Family::kNoise, "gaussian"};
  spec.severity = Severity::kModerate;
  spec.params = NoiseParams{20};
  spec.seed = 7;
  const RasterImage a = apply_distortion(img, spec);
  const RasterImage b = apply_distortion(img, spec);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, img);
  spec.seed = 8;
  EXPECT_NE(apply_distortion(img, spec), a);
}

TEST(ApplyDistortion, EveryFamilyChangesTheImageAndIsDeterministic) {
  const RasterImage img = testing::test_image(96, 80, 3);
  for (Family f : degrading_families()) {
    for (Severity s : kDegradingSeverities) {
      const DistortionSpec spec = make_spec(f, s, 42);
      EXPECT_EQ(spec.params, severity_params(f, s));
      const RasterImage a = apply_distortion(img, spec);
      EXPECT_NE(a, img) << to_string(f) << "/" << to_string(s);
      EXPECT_EQ(apply_distortion(img, spec), a) << to_string(f);
      EXPECT_EQ(a.width(), img.width());
    }
  }
}

TEST(ApplyDistortion, IndependentOfThreadCount) {
  const RasterImage img = testing::test_image(80, 72, 4);
  for (Family f : degrading_families()) {
    const DistortionSpec spec = make_spec(f, Severity::kSevere, 9);
    set_thread_count(1);
    const RasterImage one = apply_distortion(img, spec);
    set_thread_count(4);
    const RasterImage four = apply_distortion(img, spec);
    set_thread_count(0);
    EXPECT_EQ(one, four) << to_string(f);
  }
}

TEST(Ops, PointOperationsOnGray) {
  EXPECT_EQ(ops::luma_gain(gray(100), 1.5).samples()[0], 150);
  EXPECT_EQ(ops::luma_gain(gray(200), 1.5).samples()[0], 255);
  EXPECT_EQ(ops::contrast(gray(100), 2.0), gray(100));  // a flat image has no contrast to scale
  EXPECT_EQ(ops::saturation(gray(90), 0.0), gray(90));
  EXPECT_EQ(ops::gaussian_blur(gray(50), 3.0), gray(50));
  EXPECT_EQ(ops::pixelate(gray(50), 8), gray(50));
}

TEST(Ops, PixelateMakesConstantBlocks) {
  const RasterImage out = ops::pixelate(testing::test_image(64, 64, 5), 8);
  for (int by = 0; by < 64; by += 8) {
    for (int bx = 0; bx < 64; bx += 8) {
      for (int y = by; y < by + 8; ++y) {
        for (int x = bx; x < bx + 8; ++x) {
          ASSERT_EQ(out.at(x, y, 0), out.at(bx, by, 0));
        }
      }
    }
  }
}

TEST(Ops, QuantTableScalesWithQuality) {
  const QuantTable q90 = scaled_quant_table(false, 90);
  const QuantTable q10 = scaled_quant_table(false, 10);
  for (std::size_t k = 0; k < 64; ++k) {
    EXPECT_GE(q90[k], 1.0);
    EXPECT_LT(q90[k], q10[k]);
  }
}

}  // namespace
}  // namespace dgkit
