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

// Data-parallel pixel kernels. Every kernel exists twice with the same
// signature:
//
//   kernels::serial  plain loops; the reference implementation for tests.
//   kernels::omp     OpenMP work-sharing over rows or blocks.
//
// Both variants perform the same floating-point operations in the same order
// for each output element, so their results are bit-identical for any thread
// count. Production code calls through kernels::parallel.

#ifndef DGKIT_SYNTH_KERNELS_HPP_
#define DGKIT_SYNTH_KERNELS_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace dgkit {

// Interleaved floating-point image with `channels` samples per pixel.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  ImageBuffer() = default;
  ImageBuffer(int w, int h, int c) : width(w), height(h), channels(c), data(std::size_t(w) * h * c) {}

  double& at(int x, int y, int c) { return data[(std::size_t(y) * width + x) * channels + c]; }
  double at(int x, int y, int c) const { return data[(std::size_t(y) * width + x) * channels + c]; }
};

using QuantTable = std::array<double, 64>;

// Normalized Gaussian taps with radius ceil(3 sigma) (or `radius` if > 0).
std::vector<double> gaussian_taps(double sigma, int radius = 0);

namespace kernels {

// separable_filter: convolution with clamp-to-edge borders; `taps` has odd
//   length and is applied horizontally, then vertically.
// block_dct_quantize: in place, per 8x8 block: DCT, quantize with `q`
//   (round half even), inverse DCT. Samples must already be level-shifted.
//   Partial edge blocks are padded by replication.
// ssim_map: per-pixel structural similarity of two single-channel planes
//   with the Gaussian window `taps` (clamp-to-edge) and stabilizers c1, c2.
// add_gaussian_noise: zero-mean Gaussian noise; sample i draws from counters
//   (2i, 2i+1) of `seed`, so the result does not depend on iteration order.

namespace serial {
void separable_filter(const ImageBuffer& in, ImageBuffer& out, std::span<const double> taps);
void block_dct_quantize(std::span<double> plane, int width, int height, const QuantTable& q);
void ssim_map(std::span<const double> x, std::span<const double> y, int width, int height,
              std::span<const double> taps, double c1, double c2, std::span<double> out);
void add_gaussian_noise(std::span<double> samples, double sigma, std::uint64_t seed);
}  // namespace serial

namespace omp {
void separable_filter(const ImageBuffer& in, ImageBuffer& out, std::span<const double> taps);
void block_dct_quantize(std::span<double> plane, int width, int height, const QuantTable& q);
void ssim_map(std::span<const double> x, std::span<const double> y, int width, int height,
              std::span<const double> taps, double c1, double c2, std::span<double> out);
void add_gaussian_noise(std::span<double> samples, double sigma, std::uint64_t seed);
}  // namespace omp

#ifdef DGKIT_HAVE_OPENMP
namespace parallel = omp;
#else
namespace parallel = serial;
#endif

}  // namespace kernels

// Worker count used by the OpenMP kernels and pair-level parallel loops.
void set_thread_count(int threads);
int thread_count();

}  // namespace dgkit

#endif  // DGKIT_SYNTH_KERNELS_HPP_
