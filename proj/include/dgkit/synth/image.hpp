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

#ifndef DGKIT_SYNTH_IMAGE_HPP_
#define DGKIT_SYNTH_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dgkit {

inline constexpr int kMinImageSide = 64;

// 8-bit interleaved RGB.
class RasterImage {
 public:
  RasterImage() = default;
  // Throws kInvalidImage when either side is below kMinImageSide.
  RasterImage(int width, int height, std::uint8_t fill = 0);
  RasterImage(int width, int height, std::vector<std::uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  std::span<std::uint8_t> samples() { return samples_; }
  std::span<const std::uint8_t> samples() const { return samples_; }

  std::uint8_t& at(int x, int y, int c) { return samples_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c]; }
  std::uint8_t at(int x, int y, int c) const {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

// Per-pixel region index; 0 = unassigned, k = region k.
class LabelMap {
 public:
  LabelMap() = default;
  LabelMap(int width, int height, std::uint16_t fill = 0);
  LabelMap(int width, int height, std::vector<std::uint16_t> values);

  int width() const { return width_; }
  int height() const { return height_; }

  std::span<std::uint16_t> values() { return values_; }
  std::span<const std::uint16_t> values() const { return values_; }

  std::uint16_t& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint16_t at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }

  // Largest index present (the region count for well-formed maps).
  std::uint16_t max_index() const;
  std::size_t pixel_count(std::uint16_t index) const;

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint16_t> values_;
};

struct LabelMapWarning {
  std::uint16_t missing_index = 0;
  std::string message;
};

struct LoadedLabelMap {
  LabelMap map;
  std::vector<LabelMapWarning> warnings;  // index gaps
};

// Binary PGM: "P5", maxval 65535, big-endian samples.
LoadedLabelMap load_label_map(std::string_view bytes);
std::string store_label_map(const LabelMap& map);

// Binary PPM: "P6", maxval 255.
RasterImage load_ppm(std::string_view bytes);
std::string store_ppm(const RasterImage& image);

// 8-bit RGB PNG through libpng.
RasterImage load_png(std::string_view bytes);
std::string store_png(const RasterImage& image);

// Dispatch on the file extension (.ppm or .png).
RasterImage read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const RasterImage& image);
LoadedLabelMap read_label_map(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace dgkit

#endif  // DGKIT_SYNTH_IMAGE_HPP_
