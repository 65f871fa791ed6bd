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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dgkit/error.hpp"
#include "dgkit/synth/kernels.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kRedWeight = 0.299, kGreenWeight = 0.587, kBlueWeight = 0.114;

ImageBuffer to_buffer(const RasterImage& image) {
  ImageBuffer buf(image.width(), image.height(), 3);
  const auto src = image.samples();
  for (std::size_t i = 0; i < src.size(); ++i) buf.data[i] = src[i];
  return buf;
}

std::uint8_t to_byte(double v) {
  // nearbyint rounds half to even under the default rounding mode.
  const double r = std::nearbyint(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

RasterImage from_buffer(const ImageBuffer& buf) {
  std::vector<std::uint8_t> samples(buf.data.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = to_byte(buf.data[i]);
  return RasterImage(buf.width, buf.height, std::move(samples));
}

template <typename PixelFn>
RasterImage map_pixels(const RasterImage& image, PixelFn fn) {
  ImageBuffer buf = to_buffer(image);
  const auto n = static_cast<std::int64_t>(image.pixel_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) fn(&buf.data[static_cast<std::size_t>(i) * 3]);
  return from_buffer(buf);
}

// Standard JPEG (ITU-T T.81 Annex K) tables, row-major.
constexpr std::array<int, 64> kLumaTable = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};
constexpr std::array<int, 64> kChromaTable = {
    17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
    24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

// Alpha-composites an overlay colour with per-pixel alpha.
RasterImage composite_overlay(const RasterImage& image, const std::vector<double>& alpha,
                              double colour) {
  ImageBuffer buf = to_buffer(image);
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    const double a = alpha[p];
    if (a <= 0.0) continue;
    for (int c = 0; c < 3; ++c) {
      double& v = buf.data[p * 3 + c];
      v = v * (1.0 - a) + colour * a;
    }
  }
  return from_buffer(buf);
}

double segment_distance(double px, double py, double x0, double y0, double x1, double y1) {
  const double dx = x1 - x0, dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - x0) * dx + (py - y0) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = x0 + t * dx - px, ey = y0 + t * dy - py;
  return std::sqrt(ex * ex + ey * ey);
}

int primitive_count(const RasterImage& image, double density) {
  return static_cast<int>(std::lround(density * static_cast<double>(image.pixel_count()) / 1000.0));
}

}  // namespace

QuantTable scaled_quant_table(bool chroma, int quality) {
  quality = std::clamp(quality, 1, 100);
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  const auto& base = chroma ? kChromaTable : kLumaTable;
  QuantTable q{};
  for (int i = 0; i < 64; ++i) q[i] = std::clamp((base[i] * scale + 50) / 100, 1, 255);
  return q;
}

namespace ops {

RasterImage gaussian_blur(const RasterImage& image, double sigma) {
  ImageBuffer buf = to_buffer(image);
  const auto taps = gaussian_taps(sigma);
  ImageBuffer out;
  kernels::parallel::separable_filter(buf, out, taps);
  return from_buffer(out);
}

RasterImage luma_gain(const RasterImage& image, double gain) {
  // Adding the same offset to R, G and B shifts luma and leaves Cb/Cr intact.
  return map_pixels(image, [gain](double* px) {
    const double luma = kRedWeight * px[0] + kGreenWeight * px[1] + kBlueWeight * px[2];
    const double delta = (gain - 1.0) * luma;
    for (int c = 0; c < 3; ++c) px[c] += delta;
  });
}

RasterImage contrast(const RasterImage& image, double scale) {
  std::array<double, 3> mean{};
  const auto src = image.samples();
  for (std::size_t i = 0; i < src.size(); ++i) mean[i % 3] += src[i];
  for (double& m : mean) m /= static_cast<double>(image.pixel_count());
  return map_pixels(image, [&mean, scale](double* px) {
    for (int c = 0; c < 3; ++c) px[c] = mean[c] + scale * (px[c] - mean[c]);
  });
}

RasterImage saturation(const RasterImage& image, double scale) {
  // HSV saturation scaling at fixed hue and value: each channel c satisfies
  // c = V (1 - S f(H)), so scaling S by r moves c to V - (V - c) r.
  return map_pixels(image, [scale](double* px) {
    const double v = std::max({px[0], px[1], px[2]});
    const double lo = std::min({px[0], px[1], px[2]});
    if (v <= 0.0 || v == lo) return;
    const double s = (v - lo) / v;
    const double ratio = std::min(s * scale, 1.0) / s;
    for (int c = 0; c < 3; ++c) px[c] = v - (v - px[c]) * ratio;
  });
}

RasterImage gaussian_noise(const RasterImage& image, double sigma, std::uint64_t seed) {
  ImageBuffer buf = to_buffer(image);
  kernels::parallel::add_gaussian_noise(buf.data, sigma, seed);
  return from_buffer(buf);
}

RasterImage block_dct(const RasterImage& image, int quality) {
  const int w = image.width(), h = image.height();
  const std::size_t n = image.pixel_count();
  std::array<std::vector<double>, 3> planes;
  for (auto& p : planes) p.resize(n);
  const auto src = image.samples();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = src[i * 3], g = src[i * 3 + 1], b = src[i * 3 + 2];
    planes[0][i] = kRedWeight * r + kGreenWeight * g + kBlueWeight * b - 128.0;
    planes[1][i] = -0.168736 * r - 0.331264 * g + 0.5 * b;
    planes[2][i] = 0.5 * r - 0.418688 * g - 0.081312 * b;
  }
  const QuantTable luma_q = scaled_quant_table(false, quality);
  const QuantTable chroma_q = scaled_quant_table(true, quality);
  kernels::parallel::block_dct_quantize(planes[0], w, h, luma_q);
  kernels::parallel::block_dct_quantize(planes[1], w, h, chroma_q);
  kernels::parallel::block_dct_quantize(planes[2], w, h, chroma_q);
  ImageBuffer out(w, h, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = planes[0][i] + 128.0, cb = planes[1][i], cr = planes[2][i];
    out.data[i * 3] = y + 1.402 * cr;
    out.data[i * 3 + 1] = y - 0.344136 * cb - 0.714136 * cr;
    out.data[i * 3 + 2] = y + 1.772 * cb;
  }
  return from_buffer(out);
}

RasterImage pixelate(const RasterImage& image, int block) {
  const int w = image.width(), h = image.height();
  ImageBuffer buf = to_buffer(image);
  const int bw = (w + block - 1) / block, bh = (h + block - 1) / block;
#pragma omp parallel for schedule(static)
  for (int b = 0; b < bw * bh; ++b) {
    const int x0 = (b % bw) * block, y0 = (b / bw) * block;
    const int x1 = std::min(x0 + block, w), y1 = std::min(y0 + block, h);
    std::array<double, 3> sum{};
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x)
        for (int c = 0; c < 3; ++c) sum[c] += buf.at(x, y, c);
    const double count = static_cast<double>((x1 - x0) * (y1 - y0));
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x)
        for (int c = 0; c < 3; ++c) buf.at(x, y, c) = sum[c] / count;
  }
  return from_buffer(buf);
}

RasterImage unsharp_mask(const RasterImage& image, double amount, double sigma) {
  const ImageBuffer buf = to_buffer(image);
  ImageBuffer blurred;
  kernels::parallel::separable_filter(buf, blurred, gaussian_taps(sigma));
  ImageBuffer out = buf;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = buf.data[i] + amount * (buf.data[i] - blurred.data[i]);
  }
  return from_buffer(out);
}

RasterImage haze(const RasterImage& image, double transmission, double airlight) {
  return map_pixels(image, [transmission, airlight](double* px) {
    for (int c = 0; c < 3; ++c) px[c] = px[c] * transmission + airlight * (1.0 - transmission);
  });
}

RasterImage rain(const RasterImage& image, const OverlayParams& params, std::uint64_t seed) {
  const int w = image.width(), h = image.height();
  std::vector<double> alpha(image.pixel_count(), 0.0);
  Rng rng(seed);
  const int count = primitive_count(image, params.density);
  const double reach = 0.12 * std::min(w, h);
  for (int k = 0; k < count; ++k) {
    const double x0 = rng.uniform(0.0, w), y0 = rng.uniform(0.0, h);
    const double length = reach * rng.uniform(0.6, 1.4);
    const double angle = (10.0 + 10.0 * rng.uniform()) * std::numbers::pi / 180.0;
    const double width = 0.6 + 0.4 * rng.uniform();
    const double x1 = x0 + length * std::sin(angle), y1 = y0 + length * std::cos(angle);
    const double pad = 3.0 * width;
    const int xa = std::max(0, static_cast<int>(std::floor(std::min(x0, x1) - pad)));
    const int xb = std::min(w - 1, static_cast<int>(std::ceil(std::max(x0, x1) + pad)));
    const int ya = std::max(0, static_cast<int>(std::floor(std::min(y0, y1) - pad)));
    const int yb = std::min(h - 1, static_cast<int>(std::ceil(std::max(y0, y1) + pad)));
    for (int y = ya; y <= yb; ++y) {
      for (int x = xa; x <= xb; ++x) {
        const double d = segment_distance(x + 0.5, y + 0.5, x0, y0, x1, y1);
        const double a = params.opacity * std::exp(-(d * d) / (2.0 * width * width));
        double& dst = alpha[std::size_t(y) * w + x];
        dst = std::max(dst, a);
      }
    }
  }
  return composite_overlay(image, alpha, 235.0);
}

RasterImage snow(const RasterImage& image, const OverlayParams& params, std::uint64_t seed) {
  const int w = image.width(), h = image.height();
  std::vector<double> alpha(image.pixel_count(), 0.0);
  Rng rng(seed);
  const int count = primitive_count(image, params.density);
  for (int k = 0; k < count; ++k) {
    const double cx = rng.uniform(0.0, w), cy = rng.uniform(0.0, h);
    const double radius = rng.uniform(0.8, 2.2);
    const double pad = 3.0 * radius;
    const int xa = std::max(0, static_cast<int>(std::floor(cx - pad)));
    const int xb = std::min(w - 1, static_cast<int>(std::ceil(cx + pad)));
    const int ya = std::max(0, static_cast<int>(std::floor(cy - pad)));
    const int yb = std::min(h - 1, static_cast<int>(std::ceil(cy + pad)));
    for (int y = ya; y <= yb; ++y) {
      for (int x = xa; x <= xb; ++x) {
        const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
        const double a = params.opacity * std::exp(-(dx * dx + dy * dy) / (2.0 * radius * radius));
        double& dst = alpha[std::size_t(y) * w + x];
        dst = std::max(dst, a);
      }
    }
  }
  return composite_overlay(image, alpha, 250.0);
}

}  // namespace ops

double strength(const DistortionParams& params) {
  return std::visit(
      Overloaded{
          [](std::monostate) { return 0.0; },
          [](const BlurParams& p) { return p.sigma; },
          [](const GainParams& p) { return std::abs(p.gain - 1.0); },
          [](const ContrastParams& p) { return std::abs(p.scale - 1.0); },
          [](const SaturationParams& p) { return std::abs(p.scale - 1.0); },
          [](const NoiseParams& p) { return p.sigma; },
          [](const CompressionParams& p) { return 100.0 - p.quality; },
          [](const PixelateParams& p) { return static_cast<double>(p.block); },
          [](const SharpenParams& p) { return p.amount; },
          [](const HazeParams& p) { return 1.0 - p.transmission; },
          [](const OverlayParams& p) { return p.density; },
      },
      params);
}

SeverityTable::SeverityTable() {
  using F = Family;
  table_[F::kBlur] = {BlurParams{1.0}, BlurParams{2.0}, BlurParams{4.0}};
  table_[F::kBrightness] = {GainParams{1.25}, GainParams{1.5}, GainParams{1.9}};
  table_[F::kCompression] = {CompressionParams{50}, CompressionParams{25}, CompressionParams{10}};
  table_[F::kContrastStrengthen] = {ContrastParams{1.4}, ContrastParams{1.9}, ContrastParams{2.6}};
  table_[F::kContrastWeaken] = {ContrastParams{0.7}, ContrastParams{0.45}, ContrastParams{0.25}};
  table_[F::kDarken] = {GainParams{0.75}, GainParams{0.5}, GainParams{0.3}};
  table_[F::kHaze] = {HazeParams{0.75, 200.0}, HazeParams{0.55, 220.0}, HazeParams{0.35, 235.0}};
  table_[F::kNoise] = {NoiseParams{8.0}, NoiseParams{20.0}, NoiseParams{40.0}};
  table_[F::kOversharpen] = {SharpenParams{1.0, 1.0}, SharpenParams{2.0, 1.5},
                             SharpenParams{4.0, 2.0}};
  table_[F::kPixelate] = {PixelateParams{4}, PixelateParams{8}, PixelateParams{16}};
  table_[F::kRain] = {OverlayParams{2.0, 0.45}, OverlayParams{4.0, 0.6}, OverlayParams{8.0, 0.75}};
  table_[F::kSaturationStrengthen] = {SaturationParams{1.6}, SaturationParams{2.5},
                                      SaturationParams{4.0}};
  table_[F::kSaturationWeaken] = {SaturationParams{0.6}, SaturationParams{0.3},
                                  SaturationParams{0.0}};
  table_[F::kSnow] = {OverlayParams{3.0, 0.6}, OverlayParams{6.0, 0.75}, OverlayParams{12.0, 0.9}};
}

const SeverityTable& SeverityTable::defaults() {
  static const SeverityTable table;
  return table;
}

DistortionParams SeverityTable::params(Family family, Severity severity) const {
  if (family == Family::kClean || severity == Severity::kNone) {
    throw Error(ErrorCode::kInvalidCombination,
                "no severity parameters for (" + std::string(to_string(family)) + ", " +
                    std::string(to_string(severity)) + ")");
  }
  return table_.at(family)[static_cast<std::size_t>(severity) - 1];
}

void SeverityTable::override_primary(Family family, const std::array<double, 3>& values) {
  if (family == Family::kClean) {
    throw Error(ErrorCode::kInvalidCombination, "clean has no severity parameters");
  }
  auto updated = table_.at(family);
  for (std::size_t k = 0; k < 3; ++k) {
    const double v = values[k];
    std::visit(Overloaded{
                   [](std::monostate) {},
                   [v](BlurParams& p) { p.sigma = v; },
                   [v](GainParams& p) { p.gain = v; },
                   [v](ContrastParams& p) { p.scale = v; },
                   [v](SaturationParams& p) { p.scale = v; },
                   [v](NoiseParams& p) { p.sigma = v; },
                   [v](CompressionParams& p) { p.quality = static_cast<int>(std::lround(v)); },
                   [v](PixelateParams& p) { p.block = static_cast<int>(std::lround(v)); },
                   [v](SharpenParams& p) { p.amount = v; },
                   [v](HazeParams& p) { p.transmission = v; },
                   [v](OverlayParams& p) { p.density = v; },
               },
               updated[k]);
  }
  // Direction: gains/scales must stay on their side of 1.
  const bool upward = family == Family::kBrightness || family == Family::kContrastStrengthen ||
                      family == Family::kSaturationStrengthen;
  const bool downward = family == Family::kDarken || family == Family::kContrastWeaken ||
                        family == Family::kSaturationWeaken || family == Family::kHaze;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0 || (upward && v <= 1.0) || (downward && v >= 1.0) ||
        (family == Family::kHaze && v <= 0.0)) {
      throw Error(ErrorCode::kInvalidCombination,
                  "override value out of range for " + std::string(to_string(family)));
    }
  }
  if (!(strength(updated[0]) < strength(updated[1]) && strength(updated[1]) < strength(updated[2])) ||
      strength(updated[0]) <= 0.0) {
    throw Error(ErrorCode::kInvalidCombination,
                "override for " + std::string(to_string(family)) +
                    " does not strictly increase strength from minor to severe");
  }
  table_[family] = updated;
}

DistortionParams severity_params(Family family, Severity severity) {
  return SeverityTable::defaults().params(family, severity);
}

DistortionSpec clean_spec() { return DistortionSpec{}; }

DistortionSpec make_spec(Family family, Severity severity, std::uint64_t seed,
                         const SeverityTable& table) {
  if (family == Family::kClean) {
    if (severity != Severity::kNone) {
      throw Error(ErrorCode::kInvalidCombination, "clean regions have severity none");
    }
    DistortionSpec spec;
    spec.seed = seed;
    return spec;
  }
  return DistortionSpec{DistortionLabel{family, std::string(default_subtype(family))}, severity,
                        table.params(family, severity), seed};
}

RasterImage apply_distortion(const RasterImage& image, const DistortionSpec& spec) {
  const Family family = spec.label.family;
  if (!is_consistent(spec.label, spec.severity)) {
    throw Error(ErrorCode::kInvalidCombination, "inconsistent distortion spec");
  }
  if (spec.label.subtype != default_subtype(family)) {
    throw Error(ErrorCode::kInvalidCombination,
                "no operator implemented for sub-type '" + spec.label.subtype + "'");
  }
  auto mismatch = [&]() -> RasterImage {
    throw Error(ErrorCode::kInvalidCombination,
                "parameters do not match family " + std::string(to_string(family)));
  };
  using F = Family;
  switch (family) {
    case F::kClean:
      return image;
    case F::kBlur:
      if (auto* p = std::get_if<BlurParams>(&spec.params)) return ops::gaussian_blur(image, p->sigma);
      return mismatch();
    case F::kBrightness:
    case F::kDarken:
      if (auto* p = std::get_if<GainParams>(&spec.params)) return ops::luma_gain(image, p->gain);
      return mismatch();
    case F::kContrastStrengthen:
    case F::kContrastWeaken:
      if (auto* p = std::get_if<ContrastParams>(&spec.params)) return ops::contrast(image, p->scale);
      return mismatch();
    case F::kSaturationStrengthen:
    case F::kSaturationWeaken:
      if (auto* p = std::get_if<SaturationParams>(&spec.params)) {
        return ops::saturation(image, p->scale);
      }
      return mismatch();
    case F::kNoise:
      if (auto* p = std::get_if<NoiseParams>(&spec.params)) {
        return ops::gaussian_noise(image, p->sigma, spec.seed);
      }
      return mismatch();
    case F::kCompression:
      if (auto* p = std::get_if<CompressionParams>(&spec.params)) {
        return ops::block_dct(image, p->quality);
      }
      return mismatch();
    case F::kPixelate:
      if (auto* p = std::get_if<PixelateParams>(&spec.params)) return ops::pixelate(image, p->block);
      return mismatch();
    case F::kOversharpen:
      if (auto* p = std::get_if<SharpenParams>(&spec.params)) {
        return ops::unsharp_mask(image, p->amount, p->sigma);
      }
      return mismatch();
    case F::kHaze:
      if (auto* p = std::get_if<HazeParams>(&spec.params)) {
        return ops::haze(image, p->transmission, p->airlight);
      }
      return mismatch();
    case F::kRain:
      if (auto* p = std::get_if<OverlayParams>(&spec.params)) return ops::rain(image, *p, spec.seed);
      return mismatch();
    case F::kSnow:
      if (auto* p = std::get_if<OverlayParams>(&spec.params)) return ops::snow(image, *p, spec.seed);
      return mismatch();
  }
  return mismatch();
}

}  // namespace dgkit
