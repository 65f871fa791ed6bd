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

// OpenMP variants. Work is shared over rows (filters) or blocks (DCT); each
// output element is computed exactly as in kernels_serial.cpp.

#ifdef DGKIT_HAVE_OPENMP
#include <omp.h>
#endif

#include <atomic>

#include "dgkit/synth/kernels.hpp"
#include "kernel_detail.hpp"

namespace dgkit {
namespace {
std::atomic<int> g_threads{0};
}  // namespace

void set_thread_count(int threads) {
  g_threads = threads;
#ifdef DGKIT_HAVE_OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
}

int thread_count() {
#ifdef DGKIT_HAVE_OPENMP
  return g_threads > 0 ? g_threads.load() : omp_get_max_threads();
#else
  return 1;
#endif
}

namespace kernels::omp {

void separable_filter(const ImageBuffer& in, ImageBuffer& out, std::span<const double> taps) {
  const int w = in.width, h = in.height, ch = in.channels;
  const int r = static_cast<int>(taps.size() / 2);
  ImageBuffer tmp(w, h, ch);
  ImageBuffer result(w, h, ch);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) {
      const double* src = &in.data[std::size_t(y) * w * ch];
      double* dst = &tmp.data[std::size_t(y) * w * ch];
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < ch; ++c) {
          double s = 0.0;
          for (int k = -r; k <= r; ++k) s += taps[k + r] * src[detail::clamp_coord(x + k, w) * ch + c];
          dst[x * ch + c] = s;
        }
      }
    }
    // Implicit barrier: every row of `tmp` is complete here.
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) {
      double* dst = &result.data[std::size_t(y) * w * ch];
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < ch; ++c) {
          double s = 0.0;
          for (int k = -r; k <= r; ++k) {
            s += taps[k + r] * tmp.data[(std::size_t(detail::clamp_coord(y + k, h)) * w + x) * ch + c];
          }
          dst[x * ch + c] = s;
        }
      }
    }
  }
  out = std::move(result);
}

void block_dct_quantize(std::span<double> plane, int width, int height, const QuantTable& q) {
  const int bw = (width + 7) / 8, bh = (height + 7) / 8;
  const int blocks = bw * bh;
  // Blocks are disjoint; replication padding reads only the block's own
  // pixels, so blocks can be processed independently in place.
#pragma omp parallel for schedule(static)
  for (int b = 0; b < blocks; ++b) {
    std::array<double, 64> block{};
    detail::load_block(plane, width, height, b % bw, b / bw, block);
    detail::quantize_block(block, q);
    detail::store_block(plane, width, height, b % bw, b / bw, block);
  }
}

void ssim_map(std::span<const double> x, std::span<const double> y, int width, int height,
              std::span<const double> taps, double c1, double c2, std::span<double> out) {
  const int r = static_cast<int>(taps.size() / 2);
  std::vector<detail::Moments> horiz(std::size_t(width) * height);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int row = 0; row < height; ++row) {
      const std::size_t base = std::size_t(row) * width;
      for (int col = 0; col < width; ++col) {
        detail::Moments m;
        for (int k = -r; k <= r; ++k) {
          const std::size_t i = base + detail::clamp_coord(col + k, width);
          const double t = taps[k + r];
          m.mx += t * x[i];
          m.my += t * y[i];
          m.xx += t * (x[i] * x[i]);
          m.yy += t * (y[i] * y[i]);
          m.xy += t * (x[i] * y[i]);
        }
        horiz[base + col] = m;
      }
    }
#pragma omp for schedule(static)
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
}

void add_gaussian_noise(std::span<double> samples, double sigma, std::uint64_t seed) {
  const auto n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    samples[i] += sigma * detail::gaussian_sample(seed, static_cast<std::uint64_t>(i));
  }
}

}  // namespace kernels::omp
}  // namespace dgkit
