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

// Per-element arithmetic shared by the serial and OpenMP kernels. Keeping it
// in one place is what makes the two variants bit-identical.

#ifndef DGKIT_SRC_SYNTH_KERNEL_DETAIL_HPP_
#define DGKIT_SRC_SYNTH_KERNEL_DETAIL_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dgkit/synth/kernels.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit::kernels::detail {

inline int clamp_coord(int v, int n) { return std::clamp(v, 0, n - 1); }

// Orthonormal DCT-II basis: basis[u][x] = c(u) cos((2x + 1) u pi / 16).
inline const std::array<std::array<double, 8>, 8>& dct_basis() {
  static const auto basis = [] {
    std::array<std::array<double, 8>, 8> b{};
    for (int u = 0; u < 8; ++u) {
      const double cu = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x) {
        b[u][x] = cu * std::cos((2.0 * x + 1.0) * u * std::numbers::pi / 16.0);
      }
    }
    return b;
  }();
  return basis;
}

// Transforms one 8x8 block in place.
inline void quantize_block(std::array<double, 64>& block, const QuantTable& q) {
  const auto& b = dct_basis();
  std::array<double, 64> tmp{};
  std::array<double, 64> coef{};
  // Rows: tmp[y][u] = sum_x b[u][x] block[y][x]
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int x = 0; x < 8; ++x) s += b[u][x] * block[y * 8 + x];
      tmp[y * 8 + u] = s;
    }
  }
  // Columns: coef[v][u] = sum_y b[v][y] tmp[y][u]
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int y = 0; y < 8; ++y) s += b[v][y] * tmp[y * 8 + u];
      coef[v * 8 + u] = std::nearbyint(s / q[v * 8 + u]) * q[v * 8 + u];
    }
  }
  // Inverse columns: tmp[y][u] = sum_v b[v][y] coef[v][u]
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int v = 0; v < 8; ++v) s += b[v][y] * coef[v * 8 + u];
      tmp[y * 8 + u] = s;
    }
  }
  // Inverse rows: block[y][x] = sum_u b[u][x] tmp[y][u]
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double s = 0.0;
      for (int u = 0; u < 8; ++u) s += b[u][x] * tmp[y * 8 + u];
      block[y * 8 + x] = s;
    }
  }
}

inline void load_block(std::span<const double> plane, int width, int height, int bx, int by,
                       std::array<double, 64>& block) {
  for (int y = 0; y < 8; ++y) {
    const int sy = clamp_coord(by * 8 + y, height);
    for (int x = 0; x < 8; ++x) {
      const int sx = clamp_coord(bx * 8 + x, width);
      block[y * 8 + x] = plane[std::size_t(sy) * width + sx];
    }
  }
}

inline void store_block(std::span<double> plane, int width, int height, int bx, int by,
                        const std::array<double, 64>& block) {
  for (int y = 0; y < 8 && by * 8 + y < height; ++y) {
    for (int x = 0; x < 8 && bx * 8 + x < width; ++x) {
      plane[std::size_t(by * 8 + y) * width + bx * 8 + x] = block[y * 8 + x];
    }
  }
}

// Moments of the window around one pixel: E[x], E[y], E[x^2], E[y^2], E[xy].
struct Moments {
  double mx = 0, my = 0, xx = 0, yy = 0, xy = 0;
};

inline double ssim_from_moments(const Moments& m, double c1, double c2) {
  const double vx = m.xx - m.mx * m.mx;
  const double vy = m.yy - m.my * m.my;
  const double cov = m.xy - m.mx * m.my;
  const double num = (2.0 * m.mx * m.my + c1) * (2.0 * cov + c2);
  const double den = (m.mx * m.mx + m.my * m.my + c1) * (vx + vy + c2);
  return num / den;
}

// Box-Muller on two counter-based uniforms.
inline double gaussian_sample(std::uint64_t seed, std::uint64_t index) {
  const double u1 = 1.0 - counter_uniform(seed, 2 * index);  // (0, 1]
  const double u2 = counter_uniform(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dgkit::kernels::detail

#endif  // DGKIT_SRC_SYNTH_KERNEL_DETAIL_HPP_
