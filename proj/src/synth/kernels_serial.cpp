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

// Reference implementations: single-threaded, straightforward loops.

#include <cmath>

#include "dgkit/synth/kernels.hpp"
#include "kernel_detail.hpp"

namespace dgkit {

std::vector<double> gaussian_taps(double sigma, int radius) {
  if (radius <= 0) radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
    sum += taps[k + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

namespace kernels::serial {

void separable_filter(const ImageBuffer& in, ImageBuffer& out, std::span<const double> taps) {
  const int w = in.width, h = in.height, ch = in.channels;
  const int r = static_cast<int>(taps.size() / 2);
  ImageBuffer tmp(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double s = 0.0;
        for (int k = -r; k <= r; ++k) s += taps[k + r] * in.at(detail::clamp_coord(x + k, w), y, c);
        tmp.at(x, y, c) = s;
      }
    }
  }
  out = ImageBuffer(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double s = 0.0;
        for (int k = -r; k <= r; ++k) s += taps[k + r] * tmp.at(x, detail::clamp_coord(y + k, h), c);
        out.at(x, y, c) = s;
      }
    }
  }
}

void block_dct_quantize(std::span<double> plane, int width, int height, const QuantTable& q) {
  const int bw = (width + 7) / 8, bh = (height + 7) / 8;
  std::array<double, 64> block{};
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      detail::load_block(plane, width, height, bx, by, block);
      detail::quantize_block(block, q);
      detail::store_block(plane, width, height, bx, by, block);
    }
  }
}

void ssim_map(std::span<const double> x, std::span<const double> y, int width, int height,
              std::span<const double> taps, double c1, double c2, std::span<double> out) {
  const int r = static_cast<int>(taps.size() / 2);
  const std::size_t n = std::size_t(width) * height;
  std::vector<detail::Moments> horiz(n);
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      detail::Moments m;
      for (int k = -r; k <= r; ++k) {
        const std::size_t i = std::size_t(row) * width + detail::clamp_coord(col + k, width);
        const double t = taps[k + r];
        m.mx += t * x[i];
        m.my += t * y[i];
        m.xx += t * (x[i] * x[i]);
        m.yy += t * (y[i] * y[i]);
        m.xy += t * (x[i] * y[i]);
      }
      horiz[std::size_t(row) * width + col] = m;
    }
  }
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      detail::Moments m;
      for (int k = -r; k <= r; ++k) {
        const detail::Moments& h = horiz[std::size_t(detail::clamp_coord(row + k, height)) * width + col];
        const double t = taps[k + r];
        m.mx += t * h.mx;
        m.my += t * h.my;
        m.xx += t * h.xx;
        m.yy += t * h.yy;
        m.xy += t * h.xy;
      }
      out[std::size_t(row) * width + col] = detail::ssim_from_moments(m, c1, c2);
    }
  }
}

void add_gaussian_noise(std::span<double> samples, double sigma, std::uint64_t seed) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] += sigma * detail::gaussian_sample(seed, i);
  }
}

}  // namespace kernels::serial
}  // namespace dgkit
