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

// The distortion graph: region nodes for the anchor and target images,
// cross-image comparison edges and optional intra-image scene edges.
//
// Matched regions share one index i in {1..N}. Anchor node i and target
// node i depict the same scene content and are compared by exactly one
// edge written anchor -> target. `validate` checks those laws on any graph
// (including ones read from disk); `build_graph` is the checked constructor.

#ifndef DGKIT_CORE_GRAPH_HPP_
#define DGKIT_CORE_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgkit/core/labels.hpp"

namespace dgkit {

using RegionIndex = std::uint32_t;

// Scores are stored on a 1e-6 grid so that the canonical text form is
// lossless. `quantize_score` snaps with round-half-even.
double quantize_score(double value);
std::int64_t score_micros(double value);

struct RegionNode {
  RegionIndex index = 0;
  std::string class_name;
  ImageSide side = ImageSide::kAnchor;
  // Label-map value holding this region's pixels. Equals `index` except in
  // re-indexed views such as grounded subgraphs.
  std::uint16_t mask_ref = 0;
  DistortionLabel distortion;
  Severity severity = Severity::kNone;
  double score = 1.0;
  std::vector<std::string> scene_attributes;

  friend bool operator==(const RegionNode&, const RegionNode&) = default;
};

// A comparison edge. Well-formed edges run from (Anchor, i) to (Target, i);
// the side fields exist so that malformed edges read from disk stay
// representable and can be reported by `validate`.
struct DistortionEdge {
  RegionIndex anchor_region = 0;
  Relation relation = Relation::kSame;
  RegionIndex target_region = 0;
  ImageSide from_side = ImageSide::kAnchor;
  ImageSide to_side = ImageSide::kTarget;

  friend bool operator==(const DistortionEdge&, const DistortionEdge&) = default;
};

struct SceneEdge {
  RegionIndex subject_region = 0;
  std::string predicate;
  RegionIndex object_region = 0;
  ImageSide side = ImageSide::kAnchor;

  friend bool operator==(const SceneEdge&, const SceneEdge&) = default;
};

struct GraphRefs {
  std::string anchor_image;
  std::string target_image;
  std::string label_map;

  friend bool operator==(const GraphRefs&, const GraphRefs&) = default;
};

struct DistortionGraph {
  std::string pair_id;
  GraphRefs refs;
  std::vector<RegionNode> anchor_nodes;
  std::vector<RegionNode> target_nodes;
  std::vector<DistortionEdge> distortion_edges;
  std::vector<SceneEdge> scene_edges;

  std::size_t region_count() const { return anchor_nodes.size(); }
  const RegionNode& node(ImageSide side, RegionIndex index) const;
  const DistortionEdge& edge(RegionIndex index) const;

  friend bool operator==(const DistortionGraph&, const DistortionGraph&) = default;
};

// Which law a violation breaches.
enum class Definition : std::uint8_t {
  kValidity,    // an edge that is not (Anchor i) -> (Target i)
  kOrdering,    // an edge written target -> anchor
  kFunctional,  // region i compared by zero or several edges
  kStructural,  // node sets, indices, labels, scores
};

std::string_view to_string(Definition definition);

struct Violation {
  Definition definition = Definition::kStructural;
  std::string element;  // e.g. "edge 3", "index 4", "anchor node 2"
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Total: never throws. Empty iff every invariant holds.
std::vector<Violation> validate(const DistortionGraph& graph);

// Sorts nodes and edges into canonical order and quantizes scores. Does not
// check anything.
void canonicalize(DistortionGraph& graph);

// Assembles, canonicalizes and checks a graph. Throws Error with
// kScoreOutOfRange, kIndexMismatch, kInvalidLabel or kEdgeViolation.
DistortionGraph build_graph(std::string pair_id, std::vector<RegionNode> anchor_nodes,
                            std::vector<RegionNode> target_nodes,
                            std::vector<DistortionEdge> edges,
                            std::vector<SceneEdge> scene_edges = {}, GraphRefs refs = {});

// Convenience for well-formed edges.
DistortionEdge make_edge(RegionIndex index, Relation relation);

// The single matched pair `index`, re-indexed to 1 with its mask_ref kept.
// Throws kUnknownRegion.
DistortionGraph grounded_subgraph(const DistortionGraph& graph, RegionIndex index);

}  // namespace dgkit

#endif  // DGKIT_CORE_GRAPH_HPP_
