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

#include "dgkit/scoring/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>

#include "dgkit/core/csv.hpp"
#include "dgkit/core/graph.hpp"
#include "dgkit/core/serialize.hpp"
#include "dgkit/error.hpp"
#include "dgkit/synth/kernels.hpp"

namespace dgkit {
namespace {

struct RegionExtent {
  int min_x = INT32_MAX, min_y = INT32_MAX, max_x = -1, max_y = -1;
  std::size_t pixels = 0;
  double squared_error = 0.0;

  bool narrow() const {
    return max_x - min_x + 1 < kSsimWindow || max_y - min_y + 1 < kSsimWindow;
  }
};

void check_request(const ScoreRequest& r) {
  if (r.reference.width() != r.degraded.width() || r.reference.height() != r.degraded.height() ||
      r.reference.width() != r.label_map.width() || r.reference.height() != r.label_map.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "reference, degraded and label map differ in size");
  }
}

const std::vector<double>& window_taps() {
  static const std::vector<double> taps = gaussian_taps(kSsimSigma, kSsimWindow / 2);
  return taps;
}

// Luma planes and per-region extents for regions 1..n (index 0 unused).
struct Measurement {
  int width = 0;
  int height = 0;
  std::vector<double> reference;
  std::vector<double> degraded;
  std::vector<RegionExtent> regions;
};

Measurement measure(const ScoreRequest& r, std::uint16_t n) {
  check_request(r);
  Measurement m;
  m.width = r.label_map.width();
  m.height = r.label_map.height();
  m.reference = luma_plane(r.reference);
  m.degraded = luma_plane(r.degraded);
  m.regions.resize(std::size_t(n) + 1);
  const auto labels = r.label_map.values();
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const std::uint16_t k = labels[p];
    if (k == 0 || k > n) continue;
    RegionExtent& e = m.regions[k];
    const int x = static_cast<int>(p % m.width), y = static_cast<int>(p / m.width);
    e.min_x = std::min(e.min_x, x);
    e.max_x = std::max(e.max_x, x);
    e.min_y = std::min(e.min_y, y);
    e.max_y = std::max(e.max_y, y);
    ++e.pixels;
    const double d = m.reference[p] - m.degraded[p];
    e.squared_error += d * d;
  }
  return m;
}

// The degraded plane seen by region k keeps the reference outside the
// region, so only the region's own pixels can lower its score. The map is
// evaluated on the bounding box grown by the window radius (clipped to the
// image); clamp-to-edge at the clipped border then matches clamp-to-edge at
// the image border.
double region_score(const Measurement& m, const LabelMap& label_map, std::uint16_t k) {
  const RegionExtent& e = m.regions[k];
  if (e.pixels == 0) {
    throw Error(ErrorCode::kEmptyRegion, "region " + std::to_string(k) + " has no pixels");
  }
  const double n = static_cast<double>(e.pixels);
  if (e.narrow()) return 1.0 / (1.0 + (e.squared_error / n) / 100.0);

  const int r = kSsimWindow / 2;
  const int x0 = std::max(e.min_x - r, 0), x1 = std::min(e.max_x + r, m.width - 1);
  const int y0 = std::max(e.min_y - r, 0), y1 = std::min(e.max_y + r, m.height - 1);
  const int cw = x1 - x0 + 1, ch = y1 - y0 + 1;
  std::vector<double> x(std::size_t(cw) * ch), y(x.size()), map(x.size());
  for (int row = 0; row < ch; ++row) {
    for (int col = 0; col < cw; ++col) {
      const std::size_t src = std::size_t(y0 + row) * m.width + (x0 + col);
      const std::size_t dst = std::size_t(row) * cw + col;
      x[dst] = m.reference[src];
      y[dst] = label_map.values()[src] == k ? m.degraded[src] : m.reference[src];
    }
  }
  kernels::serial::ssim_map(x, y, cw, ch, window_taps(), kSsimC1, kSsimC2, map);
  double sum = 0.0;
  for (int row = e.min_y; row <= e.max_y; ++row) {
    for (int col = e.min_x; col <= e.max_x; ++col) {
      if (label_map.at(col, row) == k) sum += map[std::size_t(row - y0) * cw + (col - x0)];
    }
  }
  return std::clamp((sum / n + 1.0) / 2.0, 0.0, 1.0);
}

}  // namespace

std::vector<double> RegionScorer::score_all(const ScoreRequest& request, std::uint16_t n_regions) const {
  std::vector<double> out(n_regions);
  for (std::uint16_t k = 1; k <= n_regions; ++k) out[k - 1] = score(request, k);
  return out;
}

std::vector<double> luma_plane(const RasterImage& image) {
  std::vector<double> out(image.pixel_count());
  const auto s = image.samples();
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = 0.299 * s[p * 3] + 0.587 * s[p * 3 + 1] + 0.114 * s[p * 3 + 2];
  }
  return out;
}

double SsimScorer::score(const ScoreRequest& request, std::uint16_t region_index) const {
  if (region_index == 0) throw Error(ErrorCode::kEmptyRegion, "region index 0 is unassigned");
  return region_score(measure(request, region_index), request.label_map, region_index);
}

std::vector<double> SsimScorer::score_all(const ScoreRequest& request, std::uint16_t n_regions) const {
  const Measurement m = measure(request, n_regions);
  std::vector<double> out(n_regions);
  std::vector<std::exception_ptr> errors(n_regions);
#pragma omp parallel for schedule(dynamic)
  for (int k = 1; k <= static_cast<int>(n_regions); ++k) {
    try {
      out[k - 1] = region_score(m, request.label_map, static_cast<std::uint16_t>(k));
    } catch (...) {
      errors[k - 1] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double default_score_region(const RasterImage& reference, const RasterImage& degraded,
                            const LabelMap& label_map, std::uint16_t region_index) {
  return SsimScorer().score({reference, degraded, label_map, "", ImageSide::kAnchor}, region_index);
}

Relation label_relation(double score_anchor, double score_target) {
  for (double s : {score_anchor, score_target}) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw Error(ErrorCode::kOutOfRange, "score " + std::to_string(s) + " outside [0, 1]");
    }
  }
  const std::int64_t delta = score_micros(score_anchor) - score_micros(score_target);
  const std::int64_t magnitude = std::llabs(delta);
  if (magnitude < 100000) return Relation::kSame;
  if (magnitude < 300000) return delta > 0 ? Relation::kSlightlyBetter : Relation::kSlightlyWorse;
  return delta > 0 ? Relation::kSignificantlyBetter : Relation::kSignificantlyWorse;
}

ScoreTable ScoreTable::load(std::string_view bytes) {
  ScoreTable table;
  for (const csv::Row& row : csv::read(bytes, "pair_id,side,region_index,score")) {
    const auto side = parse_side(row.fields[1]);
    if (!side) {
      throw ParseError("line " + std::to_string(row.line) + ": unknown side '" + row.fields[1] + "'",
                       std::nullopt, row.line);
    }
    const std::uint64_t index = csv::parse_uint(row.fields[2], row.line);
    if (index == 0 || index > 0xFFFF) {
      throw ParseError("line " + std::to_string(row.line) + ": region index out of range",
                       std::nullopt, row.line);
    }
    const double score = csv::parse_score(row.fields[3], row.line);
    const Key key{row.fields[0], *side, static_cast<std::uint32_t>(index)};
    if (!table.entries_.emplace(key, score).second) {
      throw Error(ErrorCode::kDuplicateKey, "line " + std::to_string(row.line) + ": duplicate key (" +
                                                row.fields[0] + ", " + row.fields[1] + ", " +
                                                row.fields[2] + ")");
    }
  }
  return table;
}

void ScoreTable::insert(std::string pair_id, ImageSide side, std::uint32_t region_index, double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorCode::kScoreOutOfRange, "score " + std::to_string(score) + " outside [0, 1]");
  }
  Key key{std::move(pair_id), side, region_index};
  if (!entries_.emplace(key, score).second) {
    throw Error(ErrorCode::kDuplicateKey, "duplicate key (" + std::get<0>(key) + ", " +
                                              std::string(to_string(side)) + ", " +
                                              std::to_string(region_index) + ")");
  }
}

std::optional<double> ScoreTable::find(std::string_view pair_id, ImageSide side,
                                       std::uint32_t region_index) const {
  const auto it = entries_.find(Key{std::string(pair_id), side, region_index});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string ScoreTable::to_csv() const {
  std::string out = "pair_id,side,region_index,score\n";
  for (const auto& [key, score] : entries_) {
    out += std::get<0>(key) + "," + std::string(to_string(std::get<1>(key))) + "," +
           std::to_string(std::get<2>(key)) + "," + format_score(score) + "\n";
  }
  return out;
}

double TableScorer::score(const ScoreRequest& request, std::uint16_t region_index) const {
  const auto s = table_.find(request.pair_id, request.side, region_index);
  if (!s) {
    throw Error(ErrorCode::kUnknownRegion, "score table has no entry for (" +
                                               std::string(request.pair_id) + ", " +
                                               std::string(to_string(request.side)) + ", " +
                                               std::to_string(region_index) + ")");
  }
  return *s;
}

}  // namespace dgkit
