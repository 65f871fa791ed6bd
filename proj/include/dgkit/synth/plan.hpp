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

// Region-wise degradation: sampling per-region distortion plans and applying
// them through the label map.

#ifndef DGKIT_SYNTH_PLAN_HPP_
#define DGKIT_SYNTH_PLAN_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgkit/core/graph.hpp"
#include "dgkit/synth/distortion.hpp"
#include "dgkit/synth/image.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit {

inline constexpr double kCleanRegionProbability = 0.2;

// Whole-image degradation regime: Uniform(f) for each of the 14 degrading
// families, Clean, or Mixed.
class Setting {
 public:
  enum class Kind : std::uint8_t { kUniform, kClean, kMixed };

  static Setting uniform(Family family);
  static Setting clean() { return Setting(Kind::kClean, Family::kClean); }
  static Setting mixed() { return Setting(Kind::kMixed, Family::kClean); }

  // The 16 settings: Uniform(f) in family order, then Clean, then Mixed.
  static const std::array<Setting, 16>& all();

  Kind kind() const { return kind_; }
  // Meaningful for kUniform only.
  Family family() const { return family_; }

  // "uniform:blur", "clean", "mixed".
  std::string name() const;
  static std::optional<Setting> parse(std::string_view text);

  friend bool operator==(const Setting&, const Setting&) = default;

 private:
  Setting(Kind kind, Family family) : kind_(kind), family_(family) {}
  Kind kind_;
  Family family_;
};

// One DistortionSpec per region; element k belongs to region index k + 1.
using RegionPlan = std::vector<DistortionSpec>;

struct PlanSeeding {
  std::uint64_t pair_seed = 0;
  ImageSide side = ImageSide::kAnchor;
};

// Each region is independently Clean with probability 0.2; otherwise
// Uniform(f) uses family f and Mixed draws the family uniformly from the 14.
// Severity is uniform over {Minor, Moderate, Severe}. The Clean setting
// yields an all-clean plan without consuming randomness. Spec seeds are
// region_seed_from_pair(seeding.pair_seed, seeding.side, index).
RegionPlan sample_region_plan(Rng& rng, std::size_t n_regions, const Setting& setting,
                              const PlanSeeding& seeding = {},
                              const SeverityTable& table = SeverityTable::defaults());

// Pixels labelled `region_index` come from `degraded`, all others from `base`.
// Throws kDimensionMismatch.
RasterImage composite_region(const RasterImage& base, const RasterImage& degraded,
                             const LabelMap& label_map, std::uint16_t region_index);

// Applies both plans region by region (ascending index). Throws
// kDimensionMismatch or kIndexMismatch when a plan length differs from the
// label map's region count.
std::pair<RasterImage, RasterImage> synthesize_pair(const RasterImage& scene,
                                                    const LabelMap& label_map,
                                                    const RegionPlan& plan_anchor,
                                                    const RegionPlan& plan_target);

// Same as one side of synthesize_pair.
RasterImage synthesize_side(const RasterImage& scene, const LabelMap& label_map,
                            const RegionPlan& plan);

// Checks that every node's mask_ref resolves to a non-empty pixel set and
// that the label map's indices are exactly {1..N_R}.
std::vector<Violation> check_masks(const DistortionGraph& graph, const LabelMap& label_map);

}  // namespace dgkit

#endif  // DGKIT_SYNTH_PLAN_HPP_
