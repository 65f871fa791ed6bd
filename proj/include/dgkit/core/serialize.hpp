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

// Canonical JSON form of a DistortionGraph (format version 1).
//
//   {"version": 1, "pair_id", "anchor_image", "target_image", "label_map",
//    "regions": [{"index", "class", "side", "distortion": {"family", "subtype"},
//                 "severity", "score"[, "mask"][, "attributes"]}],
//    "distortion_edges": [{"index", "relation"[, "from"][, "to"][, "target_index"]}]
//    [, "scene_edges": [{"subject", "predicate", "object", "side"}]]}
//
// Keys appear in exactly this order, regions are sorted by (index, A before
// T), scores are written with six fractional digits. The bracketed keys are
// only written when they differ from their defaults (mask == index,
// from == "A", to == "T", target_index == index) or are non-empty, so a
// well-formed graph never carries them.

#ifndef DGKIT_CORE_SERIALIZE_HPP_
#define DGKIT_CORE_SERIALIZE_HPP_

#include <string>
#include <string_view>

#include "dgkit/core/graph.hpp"

namespace dgkit {

inline constexpr int kGraphFormatVersion = 1;

struct SerializeOptions {
  // Allow writing graphs that fail validation (used to produce corrupted
  // fixtures).
  bool allow_invalid = false;
};

struct DeserializeOptions {
  // Return graphs that fail validation instead of throwing kValidationError.
  bool lenient = false;
};

std::string serialize(const DistortionGraph& graph, SerializeOptions options = {});

// Throws ParseError (with byte offset for syntax errors) or Error with
// kValidationError.
DistortionGraph deserialize(std::string_view bytes, DeserializeOptions options = {});

// Six fractional digits, round-half-even; shared by every text format.
std::string format_score(double value);

}  // namespace dgkit

#endif  // DGKIT_CORE_SERIALIZE_HPP_
