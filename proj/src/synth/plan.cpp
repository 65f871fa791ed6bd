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

#include <set>

#include "dgkit/error.hpp"

namespace dgkit {
namespace {

void check_dimensions(const RasterImage& a, const RasterImage& b, const LabelMap& m) {
  if (a.width() != b.width() || a.height() != b.height() || a.width() != m.width() ||
      a.height() != m.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rasters differ in size: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + ", " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + ", label map " + std::to_string(m.width()) + "x" +
                    std::to_string(m.height()));
  }
}

void composite_into(RasterImage& out, const RasterImage& degraded, const LabelMap& label_map,
                    std::uint16_t region_index) {
  const auto labels = label_map.values();
  auto dst = out.samples();
  const auto src = degraded.samples();
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (labels[p] != region_index) continue;
    dst[p * 3] = src[p * 3];
    dst[p * 3 + 1] = src[p * 3 + 1];
    dst[p * 3 + 2] = src[p * 3 + 2];
  }
}

}  // namespace

Setting Setting::uniform(Family family) {
  if (family == Family::kClean) {
    throw Error(ErrorCode::kInvalidSettings, "Uniform(clean) is spelled Setting::clean()");
  }
  return Setting(Kind::kUniform, family);
}

const std::array<Setting, 16>& Setting::all() {
  using F = Family;
  static const std::array<Setting, 16> settings = {
      uniform(F::kBlur),          uniform(F::kBrightness),
      uniform(F::kCompression),   uniform(F::kContrastStrengthen),
      uniform(F::kContrastWeaken), uniform(F::kDarken),
      uniform(F::kHaze),          uniform(F::kNoise),
      uniform(F::kOversharpen),   uniform(F::kPixelate),
      uniform(F::kRain),          uniform(F::kSaturationStrengthen),
      uniform(F::kSaturationWeaken), uniform(F::kSnow),
      clean(),                    mixed()};
  return settings;
}

std::string Setting::name() const {
  switch (kind_) {
    case Kind::kUniform: return "uniform:" + std::string(to_string(family_));
    case Kind::kClean: return "clean";
    case Kind::kMixed: return "mixed";
  }
  return "";
}

std::optional<Setting> Setting::parse(std::string_view text) {
  for (const Setting& s : all()) {
    if (s.name() == text) return s;
  }
  return std::nullopt;
}

RegionPlan sample_region_plan(Rng& rng, std::size_t n_regions, const Setting& setting,
                              const PlanSeeding& seeding, const SeverityTable& table) {
  RegionPlan plan;
  plan.reserve(n_regions);
  for (std::size_t k = 0; k < n_regions; ++k) {
    const std::uint64_t seed = region_seed_from_pair(seeding.pair_seed, seeding.side, k + 1);
    if (setting.kind() == Setting::Kind::kClean || rng.bernoulli(kCleanRegionProbability)) {
      DistortionSpec spec = clean_spec();
      spec.seed = seed;
      plan.push_back(std::move(spec));
      continue;
    }
    const Family family = setting.kind() == Setting::Kind::kMixed
                              ? degrading_families()[rng.below(kNumDegradingFamilies)]
                              : setting.family();
    const Severity severity = kDegradingSeverities[rng.below(kDegradingSeverities.size())];
    plan.push_back(make_spec(family, severity, seed, table));
  }
  return plan;
}

RasterImage composite_region(const RasterImage& base, const RasterImage& degraded,
                             const LabelMap& label_map, std::uint16_t region_index) {
  check_dimensions(base, degraded, label_map);
  RasterImage out = base;
  composite_into(out, degraded, label_map, region_index);
  return out;
}

RasterImage synthesize_side(const RasterImage& scene, const LabelMap& label_map,
                            const RegionPlan& plan) {
  check_dimensions(scene, scene, label_map);
  if (plan.size() != label_map.max_index()) {
    throw Error(ErrorCode::kIndexMismatch, "plan has " + std::to_string(plan.size()) +
                                               " regions, label map has " +
                                               std::to_string(label_map.max_index()));
  }
  RasterImage out = scene;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    if (plan[k].label.family == Family::kClean) continue;
    const RasterImage degraded = apply_distortion(scene, plan[k]);
    composite_into(out, degraded, label_map, static_cast<std::uint16_t>(k + 1));
  }
  return out;
}

std::pair<RasterImage, RasterImage> synthesize_pair(const RasterImage& scene,
                                                    const LabelMap& label_map,
                                                    const RegionPlan& plan_anchor,
                                                    const RegionPlan& plan_target) {
  return {synthesize_side(scene, label_map, plan_anchor),
          synthesize_side(scene, label_map, plan_target)};
}

std::vector<Violation> check_masks(const DistortionGraph& graph, const LabelMap& label_map) {
  std::vector<Violation> out;
  std::vector<std::size_t> counts(65536, 0);
  for (std::uint16_t v : label_map.values()) ++counts[v];
  for (const auto* nodes : {&graph.anchor_nodes, &graph.target_nodes}) {
    for (const RegionNode& n : *nodes) {
      if (n.mask_ref == 0 || counts[n.mask_ref] == 0) {
        out.push_back({Definition::kStructural,
                       std::string(n.side == ImageSide::kAnchor ? "anchor" : "target") + " node " +
                           std::to_string(n.index),
                       "mask " + std::to_string(n.mask_ref) + " has no pixels in the label map"});
      }
    }
  }
  const std::uint16_t top = label_map.max_index();
  for (std::uint32_t k = 1; k <= top; ++k) {
    if (counts[k] == 0) {
      out.push_back({Definition::kStructural, "index " + std::to_string(k),
                     "label map index has no pixels"});
    }
  }
  return out;
}

}  // namespace dgkit
