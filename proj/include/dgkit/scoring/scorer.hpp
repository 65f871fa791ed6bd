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

// Full-reference region quality scores and the score-difference relation
// labeler.

#ifndef DGKIT_SCORING_SCORER_HPP_
#define DGKIT_SCORING_SCORER_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dgkit/core/labels.hpp"
#include "dgkit/synth/image.hpp"

namespace dgkit {

// Everything a scorer may look at for one image of a pair. pair_id and side
// identify the image for table-backed scorers; analytic scorers ignore them.
struct ScoreRequest {
  const RasterImage& reference;
  const RasterImage& degraded;
  const LabelMap& label_map;
  std::string_view pair_id;
  ImageSide side = ImageSide::kAnchor;
};

// Contract: returns a value in [0, 1]; an undistorted region scores exactly
// 1.0. Implementations are pure and safe to call concurrently.
class RegionScorer {
 public:
  virtual ~RegionScorer() = default;

  virtual double score(const ScoreRequest& request, std::uint16_t region_index) const = 0;

  // Scores for regions 1..n_regions, element k for region k + 1.
  virtual std::vector<double> score_all(const ScoreRequest& request, std::uint16_t n_regions) const;

  virtual std::string name() const = 0;
};

// Window and constants of the default scorer.
inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimC1 = (0.01 * 255) * (0.01 * 255);
inline constexpr double kSsimC2 = (0.03 * 255) * (0.03 * 255);

// Rec. 601 luma of an RGB raster.
std::vector<double> luma_plane(const RasterImage& image);

// Masked luma SSIM. The structural-similarity map is computed with an 11x11
// Gaussian window (sigma 1.5, clamp-to-edge) and averaged over the pixels of
// the region (the window centres inside the region's bounding box that
// belong to it), then mapped to [0, 1] by (s + 1) / 2. A region whose
// bounding box is narrower than the window in either direction is scored
// 1 / (1 + MSE / 100) on luma instead.
class SsimScorer final : public RegionScorer {
 public:
  double score(const ScoreRequest& request, std::uint16_t region_index) const override;
  // Computes the similarity map once for all regions.
  std::vector<double> score_all(const ScoreRequest& request, std::uint16_t n_regions) const override;
  std::string name() const override { return "default"; }
};

// Free-function form of SsimScorer::score. Throws kDimensionMismatch or
// kEmptyRegion.
double default_score_region(const RasterImage& reference, const RasterImage& degraded,
                            const LabelMap& label_map, std::uint16_t region_index);

// Relation of anchor to target from the score difference, evaluated on the
// 1e-6 score grid: |d| < 0.1 same, 0.1 <= |d| < 0.3 slightly, |d| >= 0.3
// significantly. Throws kOutOfRange for scores outside [0, 1].
Relation label_relation(double score_anchor, double score_target);

// Externally computed scores keyed by (pair_id, side, region_index).
class ScoreTable {
 public:
  using Key = std::tuple<std::string, ImageSide, std::uint32_t>;

  // CSV with header "pair_id,side,region_index,score". Throws ParseError,
  // Error(kDuplicateKey) or Error(kScoreOutOfRange).
  static ScoreTable load(std::string_view bytes);

  // Throws kDuplicateKey or kScoreOutOfRange.
  void insert(std::string pair_id, ImageSide side, std::uint32_t region_index, double score);

  std::optional<double> find(std::string_view pair_id, ImageSide side, std::uint32_t region_index) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<Key, double>& entries() const { return entries_; }

  // Canonical CSV (sorted by key, scores with six decimals).
  std::string to_csv() const;

 private:
  std::map<Key, double> entries_;
};

// Looks scores up in a ScoreTable; a missing key is Error(kUnknownRegion).
class TableScorer final : public RegionScorer {
 public:
  explicit TableScorer(ScoreTable table) : table_(std::move(table)) {}
  double score(const ScoreRequest& request, std::uint16_t region_index) const override;
  std::string name() const override { return "score-table"; }
  const ScoreTable& table() const { return table_; }

 private:
  ScoreTable table_;
};

}  // namespace dgkit

#endif  // DGKIT_SCORING_SCORER_HPP_
