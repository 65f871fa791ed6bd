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

// Whole-image distortion operators and their severity parameterization.
//
// Every operator works on an 8-bit RGB image, computes in double precision
// and converts back with round-half-even and clamping to [0, 255]. Stochastic
// operators (noise, rain, snow) draw exclusively from DistortionSpec::seed.

#ifndef DGKIT_SYNTH_DISTORTION_HPP_
#define DGKIT_SYNTH_DISTORTION_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "dgkit/core/labels.hpp"
#include "dgkit/synth/image.hpp"
#include "dgkit/synth/kernels.hpp"

namespace dgkit {

struct BlurParams {
  double sigma = 0;  // Gaussian standard deviation, pixels
  friend bool operator==(const BlurParams&, const BlurParams&) = default;
};
// Brightness (gain > 1) and darken (gain < 1).
struct GainParams {
  double gain = 1;
  friend bool operator==(const GainParams&, const GainParams&) = default;
};
struct ContrastParams {
  double scale = 1;
  friend bool operator==(const ContrastParams&, const ContrastParams&) = default;
};
struct SaturationParams {
  double scale = 1;
  friend bool operator==(const SaturationParams&, const SaturationParams&) = default;
};
struct NoiseParams {
  double sigma = 0;  // 8-bit scale
  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};
struct CompressionParams {
  int quality = 100;  // IJG-style quality, 1..100
  friend bool operator==(const CompressionParams&, const CompressionParams&) = default;
};
struct PixelateParams {
  int block = 1;
  friend bool operator==(const PixelateParams&, const PixelateParams&) = default;
};
struct SharpenParams {
  double amount = 0;
  double sigma = 1;  // radius of the unsharp mask blur
  friend bool operator==(const SharpenParams&, const SharpenParams&) = default;
};
struct HazeParams {
  double transmission = 1;
  double airlight = 255;
  friend bool operator==(const HazeParams&, const HazeParams&) = default;
};
// Rain streaks / snow flakes.
struct OverlayParams {
  double density = 0;  // primitives per 1000 pixels
  double opacity = 0;
  friend bool operator==(const OverlayParams&, const OverlayParams&) = default;
};

using DistortionParams =
    std::variant<std::monostate, BlurParams, GainParams, ContrastParams, SaturationParams,
                 NoiseParams, CompressionParams, PixelateParams, SharpenParams, HazeParams,
                 OverlayParams>;

// The scalar that must grow strictly from Minor to Severe: sigma for blur and
// noise, |gain - 1|, |scale - 1|, 100 - quality, block size, sharpening
// amount, 1 - transmission, overlay density. 0 for monostate.
double strength(const DistortionParams& params);

// Parameter triples per family. The default instance holds the repository
// constants; overrides replace the primary coordinate of a family.
class SeverityTable {
 public:
  SeverityTable();

  static const SeverityTable& defaults();

  // Throws kInvalidCombination for Clean or None.
  DistortionParams params(Family family, Severity severity) const;

  // Replaces the primary coordinate (the value `strength` is derived from)
  // for Minor, Moderate, Severe. Throws kInvalidCombination if the resulting
  // strengths are not strictly increasing.
  void override_primary(Family family, const std::array<double, 3>& values);

 private:
  std::map<Family, std::array<DistortionParams, 3>> table_;
};

DistortionParams severity_params(Family family, Severity severity);

struct DistortionSpec {
  DistortionLabel label = clean_label();
  Severity severity = Severity::kNone;
  DistortionParams params;
  std::uint64_t seed = 0;

  friend bool operator==(const DistortionSpec&, const DistortionSpec&) = default;
};

DistortionSpec clean_spec();
DistortionSpec make_spec(Family family, Severity severity, std::uint64_t seed,
                         const SeverityTable& table = SeverityTable::defaults());

// Whole-image application. Clean returns the input unchanged. Throws
// kInvalidCombination when the params do not belong to the family.
RasterImage apply_distortion(const RasterImage& image, const DistortionSpec& spec);

// Per-family operators, exposed for tests and benchmarks.
namespace ops {
RasterImage gaussian_blur(const RasterImage& image, double sigma);
RasterImage luma_gain(const RasterImage& image, double gain);
RasterImage contrast(const RasterImage& image, double scale);
RasterImage saturation(const RasterImage& image, double scale);
RasterImage gaussian_noise(const RasterImage& image, double sigma, std::uint64_t seed);
RasterImage block_dct(const RasterImage& image, int quality);
RasterImage pixelate(const RasterImage& image, int block);
RasterImage unsharp_mask(const RasterImage& image, double amount, double sigma);
RasterImage haze(const RasterImage& image, double transmission, double airlight);
RasterImage rain(const RasterImage& image, const OverlayParams& params, std::uint64_t seed);
RasterImage snow(const RasterImage& image, const OverlayParams& params, std::uint64_t seed);
}  // namespace ops

// IJG quality scaling of the standard luminance/chrominance tables.
QuantTable scaled_quant_table(bool chroma, int quality);

}  // namespace dgkit

#endif  // DGKIT_SYNTH_DISTORTION_HPP_
