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

#include "dgkit/synth/plan.hpp"

#include <gtest/gtest.h>

#include <map>

#include "dgkit/error.hpp"
#include "support.hpp"

namespace dgkit {
namespace {

LabelMap stripes(int w, int h, int regions) {
  LabelMap m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.at(x, y) = static_cast<std::uint16_t>(1 + x * regions / w);
  }
  return m;
}

RegionPlan all_clean(std::size_t n) { return RegionPlan(n, clean_spec()); }

TEST(Setting, SixteenNamedSettings) {
  const auto& all = Setting::all();
  EXPECT_EQ(all.size(), 16u);
  EXPECT_EQ(all[0].name(), "uniform:blur");
  EXPECT_EQ(all[14].name(), "clean");
  EXPECT_EQ(all[15].name(), "mixed");
  for (const Setting& s : all) EXPECT_EQ(Setting::parse(s.name()), s);
  EXPECT_FALSE(Setting::parse("uniform:clean"));
  EXPECT_THROW(Setting::uniform(Family::kClean), Error);
}

TEST(SamplePlan, MixedFractions) {
  Rng rng(2024);
  const std::size_t n = 100000;
  const RegionPlan plan = sample_region_plan(rng, n, Setting::mixed());
  ASSERT_EQ(plan.size(), n);
  std::map<Family, std::size_t> counts;
  std::map<Severity, std::size_t> severities;
  for (const auto& spec : plan) {
    ++counts[spec.label.family];
    ++severities[spec.severity];
    EXPECT_TRUE(is_consistent(spec.label, spec.severity));
  }
  EXPECT_NEAR(counts[Family::kClean] / double(n), 0.20, 0.01);
  for (Family f : degrading_families()) {
    EXPECT_NEAR(counts[f] / double(n), 0.8 / 14, 0.005) << to_string(f);
  }
  for (Severity s : kDegradingSeverities) EXPECT_NEAR(severities[s] / double(n), 0.8 / 3, 0.01);
}

TEST(SamplePlan, UniformUsesOneFamily) {
  Rng rng(1);
  const RegionPlan plan = sample_region_plan(rng, 20, Setting::uniform(Family::kBlur));
  for (const auto& spec : plan) {
    if (spec.label.family != Family::kClean) EXPECT_EQ(spec.label.family, Family::kBlur);
  }
  Rng many(2);
  std::size_t clean = 0;
  for (const auto& spec : sample_region_plan(many, 20000, Setting::uniform(Family::kSnow))) {
    clean += spec.label.family == Family::kClean;
  }
  EXPECT_NEAR(clean / 20000.0, 0.2, 0.015);
}

TEST(SamplePlan, CleanSettingIsAllClean) {
  Rng rng(3);
  for (const auto& spec : sample_region_plan(rng, 50, Setting::clean())) {
    EXPECT_EQ(spec.label, clean_label());
    EXPECT_EQ(spec.severity, Severity::kNone);
  }
}

TEST(SamplePlan, SameSeedSamePlan) {
  Rng a(77), b(77);
  const PlanSeeding seeding{12345, ImageSide::kTarget};
  EXPECT_EQ(sample_region_plan(a, 40, Setting::mixed(), seeding),
            sample_region_plan(b, 40, Setting::mixed(), seeding));
  Rng c(78);
  Rng d(77);
  EXPECT_NE(sample_region_plan(c, 40, Setting::mixed(), seeding),
            sample_region_plan(d, 40, Setting::mixed(), seeding));
}

TEST(SamplePlan, RegionSeedsFollowThePairSeed) {
  Rng rng(5);
  const PlanSeeding seeding{999, ImageSide::kAnchor};
  const RegionPlan plan = sample_region_plan(rng, 4, Setting::mixed(), seeding);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    EXPECT_EQ(plan[k].seed, region_seed_from_pair(999, ImageSide::kAnchor, k + 1));
  }
}

TEST(Composite, EmptyRegionLeavesBase) {
  const RasterImage base = testing::test_image(64, 64, 1);
  const RasterImage deg = testing::test_image(64, 64, 2);
  const LabelMap m = stripes(64, 64, 2);
  EXPECT_EQ(composite_region(base, deg, m, 3), base);
}

TEST(Composite, FullRegionGivesDegraded) {
  const RasterImage base = testing::test_image(64, 64, 1);
  const RasterImage deg = testing::test_image(64, 64, 2);
  EXPECT_EQ(composite_region(base, deg, LabelMap(64, 64, 1), 1), deg);
}

TEST(Composite, CheckerboardMatchesPerPixelOracle) {
  const RasterImage base = testing::test_image(64, 72, 1);
  const RasterImage deg = testing::test_image(64, 72, 2);
  LabelMap m(64, 72);
  for (int y = 0; y < 72; ++y) {
    for (int x = 0; x < 64; ++x) m.at(x, y) = static_cast<std::uint16_t>(1 + (x + y) % 2);
  }
  for (std::uint16_t region : {1, 2}) {
    const RasterImage out = composite_region(base, deg, m, region);
    for (int y = 0; y < 72; ++y) {
      for (int x = 0; x < 64; ++x) {
        for (int c = 0; c < 3; ++c) {
          const std::uint8_t want = m.at(x, y) == region ? deg.at(x, y, c) : base.at(x, y, c);
          ASSERT_EQ(out.at(x, y, c), want);
        }
      }
    }
  }
}

TEST(Composite, SizeMismatchThrows) {
  const RasterImage base = testing::test_image(64, 64, 1);
  try {
    composite_region(base, base, LabelMap(32, 64, 1), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Synthesize, AllCleanReproducesScene) {
  const RasterImage scene = testing::test_image(64, 64, 3);
  const LabelMap m = stripes(64, 64, 4);
  const auto [a, t] = synthesize_pair(scene, m, all_clean(4), all_clean(4));
  EXPECT_EQ(a, scene);
  EXPECT_EQ(t, scene);
}

TEST(Synthesize, SingleRegionNoiseOnAnchorOnly) {
  const RasterImage scene = testing::test_image(64, 64, 3);
  const LabelMap m(64, 64, 1);
  const auto [a, t] = synthesize_pair(scene, m, {make_spec(Family::kNoise, Severity::kModerate, 7)},
                                      all_clean(1));
  EXPECT_NE(a, scene);
  EXPECT_EQ(t, scene);
}

TEST(Synthesize, ThreeRegionManualOracle) {
  const RasterImage scene = testing::test_image(90, 64, 4);
  const LabelMap m = stripes(90, 64, 3);
  const RegionPlan plan = {make_spec(Family::kBlur, Severity::kSevere, 1), clean_spec(),
                           make_spec(Family::kDarken, Severity::kMinor, 3)};
  RasterImage want = scene;
  want = composite_region(want, apply_distortion(scene, plan[0]), m, 1);
  want = composite_region(want, apply_distortion(scene, plan[2]), m, 3);
  EXPECT_EQ(synthesize_side(scene, m, plan), want);
}

TEST(Synthesize, RegionOrderDoesNotMatter) {
  // Each region reads the undistorted scene, so composite order is irrelevant.
  const RasterImage scene = testing::test_image(96, 64, 5);
  const LabelMap m = stripes(96, 64, 3);
  const RegionPlan plan = {make_spec(Family::kBlur, Severity::kSevere, 1),
                           make_spec(Family::kPixelate, Severity::kSevere, 2),
                           make_spec(Family::kNoise, Severity::kSevere, 3)};
  RasterImage forward = scene, backward = scene;
  for (int k = 0; k < 3; ++k) {
    forward = composite_region(forward, apply_distortion(scene, plan[k]), m, k + 1);
    backward = composite_region(backward, apply_distortion(scene, plan[2 - k]), m, 3 - k);
  }
  EXPECT_EQ(forward, backward);
  EXPECT_EQ(synthesize_side(scene, m, plan), forward);
}

TEST(Synthesize, PixelsOutsideDegradedRegionsAreUntouched) {
  const RasterImage scene = testing::test_image(96, 64, 6);
  const LabelMap m = stripes(96, 64, 3);
  const RegionPlan plan = {clean_spec(), make_spec(Family::kBlur, Severity::kSevere, 2), clean_spec()};
  const RasterImage out = synthesize_side(scene, m, plan);
  bool changed_inside = false;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 96; ++x) {
      for (int c = 0; c < 3; ++c) {
        if (m.at(x, y) != 2) {
          ASSERT_EQ(out.at(x, y, c), scene.at(x, y, c));
        } else {
          changed_inside |= out.at(x, y, c) != scene.at(x, y, c);
        }
      }
    }
  }
  EXPECT_TRUE(changed_inside);
}

TEST(Synthesize, PlanLengthMustMatchLabelMap) {
  const RasterImage scene = testing::test_image(64, 64, 3);
  EXPECT_THROW(synthesize_side(scene, stripes(64, 64, 4), all_clean(3)), Error);
}

TEST(CheckMasks, ReportsMissingAndEmptyIndices) {
  Rng rng(8);
  DistortionGraph g = testing::random_graph(rng, 3, false);
  while (g.region_count() != 3) g = testing::random_graph(rng, 3, false);
  EXPECT_TRUE(check_masks(g, stripes(64, 64, 3)).empty());
  const auto short_map = check_masks(g, stripes(64, 64, 2));
  EXPECT_EQ(short_map.size(), 2u);  // region 3 on both sides
  LabelMap gap = stripes(64, 64, 4);
  for (auto& v : gap.values()) {
    if (v == 3) v = 0;
  }
  EXPECT_FALSE(check_masks(g, gap).empty());
}

}  // namespace
}  // namespace dgkit
