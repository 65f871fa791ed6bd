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

#include <gtest/gtest.h>

#include "dgkit/error.hpp"
#include "support.hpp"

namespace dgkit {
namespace {

std::string pgm16(int w, int h, int maxval, const std::vector<std::uint16_t>& values) {
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n" + std::to_string(maxval) + "\n";
  for (std::uint16_t v : values) {
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

TEST(LabelMapIo, FourByFourRoundTripsBitExactly) {
  const std::vector<std::uint16_t> values = {1, 1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2};
  const LabelMap map(4, 4, values);
  const std::string bytes = store_label_map(map);
  EXPECT_EQ(bytes, pgm16(4, 4, 65535, values));
  const LoadedLabelMap back = load_label_map(bytes);
  EXPECT_EQ(back.map, map);
  EXPECT_TRUE(back.warnings.empty());
  EXPECT_EQ(store_label_map(back.map), bytes);
  EXPECT_EQ(back.map.max_index(), 2);
  EXPECT_EQ(back.map.pixel_count(1), 8u);
}

TEST(LabelMapIo, IndexGapIsAWarning) {
  const LoadedLabelMap loaded = load_label_map(pgm16(2, 2, 65535, {1, 3, 3, 0}));
  ASSERT_EQ(loaded.warnings.size(), 1u);
  EXPECT_EQ(loaded.warnings[0].missing_index, 2);
}

TEST(LabelMapIo, PreservesLargeIndices) {
  std::vector<std::uint16_t> values(16);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = static_cast<std::uint16_t>(k * 4000 + 1);
  const LabelMap map(8, 2, values);
  EXPECT_EQ(load_label_map(store_label_map(map)).map, map);
}

TEST(LabelMapIo, RejectsMalformedHeaders) {
  EXPECT_THROW(load_label_map(pgm16(2, 2, 255, {1, 1, 1, 1})), ParseError);
  EXPECT_THROW(load_label_map(pgm16(2, 2, 4095, {1, 1, 1, 1})), ParseError);
  EXPECT_THROW(load_label_map("P6\n2 2\n65535\n"), ParseError);
  EXPECT_THROW(load_label_map(pgm16(2, 2, 65535, {1, 1, 1, 1}).substr(0, 20)), ParseError);
  EXPECT_THROW(load_label_map(pgm16(2, 2, 65535, {1, 1, 1, 1}) + "x"), ParseError);
  EXPECT_THROW(load_label_map(""), ParseError);
}

TEST(LabelMapIo, HeaderCommentsAreSkipped) {
  std::string bytes = pgm16(1, 1, 65535, {5});
  bytes.insert(3, "# a comment\n");
  EXPECT_EQ(load_label_map(bytes).map.at(0, 0), 5);
}

TEST(RasterImage, EnforcesMinimumSize) {
  EXPECT_THROW(RasterImage(63, 64), Error);
  EXPECT_THROW(RasterImage(64, 10), Error);
  EXPECT_NO_THROW(RasterImage(64, 64));
  EXPECT_THROW(RasterImage(64, 64, std::vector<std::uint8_t>(10)), Error);
}

TEST(RasterImageIo, PpmRoundTrip) {
  const RasterImage img = testing::test_image(70, 65, 1);
  const std::string bytes = store_ppm(img);
  EXPECT_EQ(bytes.substr(0, 3), "P6\n");
  EXPECT_EQ(load_ppm(bytes), img);
  EXPECT_THROW(load_ppm(bytes.substr(0, bytes.size() - 1)), ParseError);
}

TEST(RasterImageIo, PngRoundTrip) {
  const RasterImage img = testing::test_image(64, 80, 2);
  const std::string bytes = store_png(img);
  EXPECT_EQ(bytes.substr(1, 3), "PNG");
  EXPECT_EQ(load_png(bytes), img);
  EXPECT_THROW(load_png("not a png"), ParseError);
}

TEST(RasterImageIo, FileHelpersDispatchOnExtension) {
  testing::TempDir dir;
  const RasterImage img = testing::test_image(64, 64, 3);
  write_image(dir / "a.ppm", img);
  write_image(dir / "a.png", img);
  EXPECT_EQ(read_image(dir / "a.ppm"), img);
  EXPECT_EQ(read_image(dir / "a.png"), img);
  EXPECT_EQ(read_file(dir / "a.ppm"), store_ppm(img));
  try {
    read_file(dir / "missing.ppm");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

}  // namespace
}  // namespace dgkit
