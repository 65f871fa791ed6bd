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

#include "dgkit/synth/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "dgkit/error.hpp"

namespace dgkit {
namespace {

void check_image_size(int width, int height) {
  if (width < kMinImageSide || height < kMinImageSide) {
    throw Error(ErrorCode::kInvalidImage, "images must be at least " +
                                              std::to_string(kMinImageSide) + "x" +
                                              std::to_string(kMinImageSide) + ", got " +
                                              std::to_string(width) + "x" + std::to_string(height));
  }
}

// Netpbm header reader: magic, then whitespace-separated decimal fields with
// '#' comments, then exactly one whitespace byte before the raster.
class NetpbmHeader {
 public:
  explicit NetpbmHeader(std::string_view bytes) : bytes_(bytes) {}

  void expect_magic(std::string_view magic) {
    if (bytes_.substr(0, magic.size()) != magic) {
      throw ParseError("expected netpbm magic '" + std::string(magic) + "'", 0);
    }
    pos_ = magic.size();
  }

  long field(const char* name) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw ParseError(std::string(name) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("expected ") + name, pos_);
    return value;
  }

  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ParseError("expected whitespace before raster", pos_);
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

RasterImage::RasterImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_image_size(width, height);
  samples_.assign(pixel_count() * 3, fill);
}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_image_size(width, height);
  if (samples_.size() != pixel_count() * 3) {
    throw Error(ErrorCode::kInvalidImage, "sample count does not match dimensions");
  }
}

LabelMap::LabelMap(int width, int height, std::uint16_t fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::kInvalidImage, "empty label map");
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

LabelMap::LabelMap(int width, int height, std::vector<std::uint16_t> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::kInvalidImage, "empty label map");
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidImage, "label count does not match dimensions");
  }
}

std::uint16_t LabelMap::max_index() const {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

std::size_t LabelMap::pixel_count(std::uint16_t index) const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), index));
}

LoadedLabelMap load_label_map(std::string_view bytes) {
  NetpbmHeader header(bytes);
  header.expect_magic("P5");
  const long width = header.field("width");
  const long height = header.field("height");
  const long maxval = header.field("maxval");
  if (maxval != 65535) {
    throw ParseError("label maps must have maxval 65535, got " + std::to_string(maxval));
  }
  if (width <= 0 || height <= 0) throw ParseError("label map has zero size");
  const std::size_t offset = header.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() < offset + 2 * count) {
    throw ParseError("truncated label map raster", bytes.size());
  }
  if (bytes.size() > offset + 2 * count) {
    throw ParseError("trailing bytes after label map raster", offset + 2 * count);
  }
  std::vector<std::uint16_t> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto hi = static_cast<unsigned char>(bytes[offset + 2 * i]);
    const auto lo = static_cast<unsigned char>(bytes[offset + 2 * i + 1]);
    values[i] = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  LoadedLabelMap out{LabelMap(static_cast<int>(width), static_cast<int>(height), std::move(values)),
                     {}};
  std::set<std::uint16_t> present(out.map.values().begin(), out.map.values().end());
  present.erase(0);
  const std::uint16_t top = present.empty() ? 0 : *present.rbegin();
  for (std::uint16_t k = 1; k < top; ++k) {
    if (present.count(k) == 0) {
      out.warnings.push_back({k, "index " + std::to_string(k) + " has no pixels (IndexGap)"});
    }
  }
  return out;
}

std::string store_label_map(const LabelMap& map) {
  std::string out = "P5\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) +
                    "\n65535\n";
  out.reserve(out.size() + map.values().size() * 2);
  for (std::uint16_t v : map.values()) {
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

RasterImage load_ppm(std::string_view bytes) {
  NetpbmHeader header(bytes);
  header.expect_magic("P6");
  const long width = header.field("width");
  const long height = header.field("height");
  const long maxval = header.field("maxval");
  if (maxval != 255) throw ParseError("only 8-bit PPM (maxval 255) is supported");
  const std::size_t offset = header.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() < offset + count) throw ParseError("truncated PPM raster", bytes.size());
  if (bytes.size() > offset + count) {
    throw ParseError("trailing bytes after PPM raster", offset + count);
  }
  std::vector<std::uint8_t> samples(count);
  std::memcpy(samples.data(), bytes.data() + offset, count);
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

std::string store_ppm(const RasterImage& image) {
  std::string out = "P6\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.samples().data()), image.samples().size());
  return out;
}

RasterImage load_png(std::string_view bytes) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
    throw ParseError(std::string("PNG decode failed: ") + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> samples(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, samples.data(), 0, nullptr)) {
    png_image_free(&img);
    throw ParseError(std::string("PNG decode failed: ") + img.message);
  }
  return RasterImage(static_cast<int>(img.width), static_cast<int>(img.height), std::move(samples));
}

std::string store_png(const RasterImage& image) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.samples().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIoError, std::string("PNG encode failed: ") + img.message);
  }
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.samples().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIoError, std::string("PNG encode failed: ") + img.message);
  }
  out.resize(size);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIoError, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

RasterImage read_image(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (path.extension() == ".png") return load_png(bytes);
  return load_ppm(bytes);
}

void write_image(const std::filesystem::path& path, const RasterImage& image) {
  write_file_atomic(path, path.extension() == ".png" ? store_png(image) : store_ppm(image));
}

LoadedLabelMap read_label_map(const std::filesystem::path& path) {
  return load_label_map(read_file(path));
}

}  // namespace dgkit
