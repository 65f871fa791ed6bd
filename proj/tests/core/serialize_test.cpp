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

#include "dgkit/core/serialize.hpp"

#include <gtest/gtest.h>

#include "dgkit/error.hpp"
#include "support.hpp"

namespace dgkit {
namespace {

DistortionGraph sample_graph() {
  Rng rng(99);
  DistortionGraph g = testing::random_graph(rng, 6);
  while (g.region_count() < 3) g = testing::random_graph(rng, 6);
  return g;
}

TEST(Serialize, RoundTripsFieldByField) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const DistortionGraph g = testing::random_graph(rng);
    const DistortionGraph back = deserialize(serialize(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(serialize(back), serialize(g));
  }
}

TEST(Serialize, NodeOrderDoesNotChangeBytes) {
  const DistortionGraph g = sample_graph();
  DistortionGraph other = g;
  std::reverse(other.anchor_nodes.begin(), other.anchor_nodes.end());
  std::reverse(other.target_nodes.begin(), other.target_nodes.end());
  std::reverse(other.distortion_edges.begin(), other.distortion_edges.end());
  EXPECT_EQ(serialize(other), serialize(g));

  // Built from reversed inputs as well.
  const DistortionGraph rebuilt = build_graph(g.pair_id, other.anchor_nodes, other.target_nodes,
                                              other.distortion_edges, other.scene_edges, g.refs);
  EXPECT_EQ(serialize(rebuilt), serialize(g));
}

TEST(Serialize, DifferentGraphsGiveDifferentBytes) {
  const DistortionGraph g = sample_graph();
  DistortionGraph other = g;
  other.anchor_nodes[0].score = quantize_score(g.anchor_nodes[0].score == 0.5 ? 0.25 : 0.5);
  EXPECT_NE(serialize(other), serialize(g));
  other = g;
  other.distortion_edges[0].relation =
      other.distortion_edges[0].relation == Relation::kSame ? Relation::kSlightlyBetter : Relation::kSame;
  EXPECT_NE(serialize(other), serialize(g));
}

TEST(Serialize, ScoresUseSixFractionalDigits) {
  EXPECT_EQ(format_score(0.5), "0.500000");
  EXPECT_EQ(format_score(1.0), "1.000000");
  EXPECT_EQ(format_score(0.0), "0.000000");
  EXPECT_EQ(format_score(0.1234567), "0.123457");
  EXPECT_EQ(format_score(-0.25), "-0.250000");
}

TEST(Serialize, RefusesInvalidGraphsUnlessAsked) {
  DistortionGraph g = sample_graph();
  g.distortion_edges.pop_back();
  try {
    serialize(g);
    FAIL() << "expected a validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
  }
  const std::string bytes = serialize(g, {.allow_invalid = true});
  EXPECT_THROW(deserialize(bytes), Error);
  const DistortionGraph lenient = deserialize(bytes, {.lenient = true});
  EXPECT_EQ(lenient.distortion_edges.size() + 1, lenient.region_count());
  EXPECT_FALSE(validate(lenient).empty());
}

TEST(Deserialize, TruncatedInputIsAParseErrorWithOffset) {
  const std::string bytes = serialize(sample_graph());
  for (std::size_t cut : {std::size_t{0}, std::size_t{1}, bytes.size() / 2, bytes.size() - 3}) {
    try {
      deserialize(std::string_view(bytes).substr(0, cut));
      FAIL() << "cut at " << cut;
    } catch (const ParseError& e) {
      EXPECT_TRUE(e.byte_offset().has_value());
      EXPECT_EQ(e.code(), ErrorCode::kParseError);
    }
  }
}

TEST(Deserialize, SchemaErrorsAreParseErrors) {
  const char* cases[] = {
      R"([])",
      R"({"version": 2, "pair_id": "p", "anchor_image": "", "target_image": "", "label_map": "", "regions": [], "distortion_edges": []})",
      R"({"version": 1, "anchor_image": "", "target_image": "", "label_map": "", "regions": [], "distortion_edges": []})",
      R"({"version": 1, "pair_id": "p", "anchor_image": "", "target_image": "", "label_map": "", "regions": {}, "distortion_edges": []})",
      R"({"version": 1, "pair_id": "p", "anchor_image": "", "target_image": "", "label_map": "", "regions": [{"index": 1, "class": "x", "side": "B", "distortion": {"family": "blur", "subtype": "gaussian"}, "severity": "minor", "score": 0.5}], "distortion_edges": []})",
      R"({"version": 1, "pair_id": "p", "anchor_image": "", "target_image": "", "label_map": "", "regions": [{"index": -1, "class": "x", "side": "A", "distortion": {"family": "blur", "subtype": "gaussian"}, "severity": "minor", "score": 0.5}], "distortion_edges": []})",
      R"({"version": 1, "pair_id": "p", "anchor_image": "", "target_image": "", "label_map": "", "regions": [], "distortion_edges": [{"index": 1, "relation": "better"}]})",
  };
  for (const char* text : cases) {
    EXPECT_THROW(deserialize(text, {.lenient = true}), ParseError) << text;
  }
}

TEST(Deserialize, AcceptsMinimalDocumentAndOptionalKeys) {
  const std::string text = R"({
    "version": 1, "pair_id": "p", "anchor_image": "a.png", "target_image": "t.png", "label_map": "m.pgm",
    "regions": [
      {"index": 1, "class": "sky", "side": "T", "distortion": {"family": "clean", "subtype": "none"},
       "severity": "none", "score": 1},
      {"index": 1, "class": "sky", "side": "A", "distortion": {"family": "haze", "subtype": "constant"},
       "severity": "severe", "score": 0.25, "mask": 7, "attributes": ["blue"]}
    ],
    "distortion_edges": [{"index": 1, "relation": "significantly_worse"}]
  })";
  const DistortionGraph g = deserialize(text);
  EXPECT_EQ(g.region_count(), 1u);
  EXPECT_EQ(g.node(ImageSide::kAnchor, 1).mask_ref, 7);
  EXPECT_EQ(g.node(ImageSide::kAnchor, 1).scene_attributes, std::vector<std::string>{"blue"});
  EXPECT_EQ(g.node(ImageSide::kTarget, 1).mask_ref, 1);
  EXPECT_EQ(g.refs.label_map, "m.pgm");
  EXPECT_TRUE(g.scene_edges.empty());
  EXPECT_EQ(deserialize(serialize(g)), g);
}

TEST(Deserialize, InvalidGraphThrowsValidationErrorByDefault) {
  const std::string text = R"({"version": 1, "pair_id": "p", "anchor_image": "", "target_image": "",
    "label_map": "", "regions": [
      {"index": 1, "class": "x", "side": "A", "distortion": {"family": "clean", "subtype": "none"}, "severity": "none", "score": 1},
      {"index": 1, "class": "x", "side": "T", "distortion": {"family": "clean", "subtype": "none"}, "severity": "none", "score": 1}],
    "distortion_edges": [{"index": 1, "relation": "same", "from": "T", "to": "A"}]})";
  try {
    deserialize(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
    EXPECT_NE(std::string(e.what()).find("ORDERING"), std::string::npos);
  }
  const DistortionGraph g = deserialize(text, {.lenient = true});
  EXPECT_EQ(g.distortion_edges[0].from_side, ImageSide::kTarget);
}

}  // namespace
}  // namespace dgkit
