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

#include "dgkit/core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "dgkit/error.hpp"

namespace dgkit {
namespace {

struct Issue {
  Violation violation;
  ErrorCode code;
};

std::string side_name(ImageSide side) {
  return side == ImageSide::kAnchor ? "anchor" : "target";
}

void check_nodes(const std::vector<RegionNode>& nodes, ImageSide side, std::vector<Issue>& out) {
  std::set<RegionIndex> seen;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const RegionNode& n = nodes[k];
    const std::string element = side_name(side) + " node " + std::to_string(n.index);
    auto report = [&](ErrorCode code, std::string message) {
      out.push_back({{Definition::kStructural, element, std::move(message)}, code});
    };
    if (n.side != side) report(ErrorCode::kIndexMismatch, "node listed on the wrong side");
    if (n.index < 1) report(ErrorCode::kIndexMismatch, "region index must be >= 1");
    if (!seen.insert(n.index).second) report(ErrorCode::kIndexMismatch, "duplicate region index");
    if (n.mask_ref == 0) report(ErrorCode::kIndexMismatch, "mask_ref 0 denotes unassigned pixels");
    if (!(n.score >= 0.0 && n.score <= 1.0)) {
      report(ErrorCode::kScoreOutOfRange, "score outside [0, 1]");
    }
    if (!is_consistent(n.distortion, n.severity)) {
      report(ErrorCode::kInvalidLabel, "inconsistent distortion/severity label");
    }
  }
}

std::set<RegionIndex> index_set(const std::vector<RegionNode>& nodes) {
  std::set<RegionIndex> out;
  for (const auto& n : nodes) out.insert(n.index);
  return out;
}

std::vector<Issue> collect_issues(const DistortionGraph& g) {
  std::vector<Issue> out;
  check_nodes(g.anchor_nodes, ImageSide::kAnchor, out);
  check_nodes(g.target_nodes, ImageSide::kTarget, out);

  const std::set<RegionIndex> anchor_ids = index_set(g.anchor_nodes);
  const std::set<RegionIndex> target_ids = index_set(g.target_nodes);
  if (g.anchor_nodes.size() != g.target_nodes.size()) {
    out.push_back({{Definition::kStructural, "node sets",
                    "anchor has " + std::to_string(g.anchor_nodes.size()) + " regions, target has " +
                        std::to_string(g.target_nodes.size())},
                   ErrorCode::kIndexMismatch});
  }
  for (const auto* ids : {&anchor_ids, &target_ids}) {
    RegionIndex expected = 1;
    for (RegionIndex id : *ids) {
      if (id != expected) {
        out.push_back({{Definition::kStructural, "index " + std::to_string(expected),
                        "region indices are not contiguous from 1"},
                       ErrorCode::kIndexMismatch});
        break;
      }
      ++expected;
    }
  }

  std::set<RegionIndex> matched;
  std::set_intersection(anchor_ids.begin(), anchor_ids.end(), target_ids.begin(), target_ids.end(),
                        std::inserter(matched, matched.end()));

  std::map<RegionIndex, int> comparisons;
  for (std::size_t k = 0; k < g.distortion_edges.size(); ++k) {
    const DistortionEdge& e = g.distortion_edges[k];
    const std::string element = "edge " + std::to_string(k);
    auto report = [&](Definition def, std::string message) {
      out.push_back({{def, element, std::move(message)}, ErrorCode::kEdgeViolation});
    };
    bool well_formed = true;
    if (e.from_side == e.to_side) {
      report(Definition::kValidity, "intra-image edge within the " + side_name(e.from_side));
      well_formed = false;
    } else if (e.from_side == ImageSide::kTarget) {
      report(Definition::kOrdering, "edge written target -> anchor");
      well_formed = false;
    }
    if (e.anchor_region != e.target_region) {
      report(Definition::kValidity, "edge joins unmatched regions " +
                                        std::to_string(e.anchor_region) + " and " +
                                        std::to_string(e.target_region));
      well_formed = false;
    } else if (matched.count(e.anchor_region) == 0) {
      report(Definition::kValidity, "edge references unknown region " +
                                        std::to_string(e.anchor_region));
      well_formed = false;
    }
    if (well_formed) ++comparisons[e.anchor_region];
  }
  for (RegionIndex i : matched) {
    const int count = comparisons[i];
    if (count != 1) {
      out.push_back({{Definition::kFunctional, "index " + std::to_string(i),
                      std::to_string(count) + " comparison edges (exactly one required)"},
                     ErrorCode::kEdgeViolation});
    }
  }

  for (std::size_t k = 0; k < g.scene_edges.size(); ++k) {
    const SceneEdge& s = g.scene_edges[k];
    const auto& ids = s.side == ImageSide::kAnchor ? anchor_ids : target_ids;
    if (ids.count(s.subject_region) == 0 || ids.count(s.object_region) == 0) {
      out.push_back({{Definition::kStructural, "scene edge " + std::to_string(k),
                      "endpoint missing on the " + side_name(s.side) + " side"},
                     ErrorCode::kEdgeViolation});
    }
  }
  return out;
}

auto edge_key(const DistortionEdge& e) {
  return std::make_tuple(e.anchor_region, e.target_region, e.from_side, e.to_side, e.relation);
}

auto scene_key(const SceneEdge& e) {
  return std::tie(e.side, e.subject_region, e.object_region, e.predicate);
}

}  // namespace

double quantize_score(double value) {
  if (!std::isfinite(value)) return value;
  return static_cast<double>(score_micros(value)) / 1e6;
}

std::int64_t score_micros(double value) {
  // nearbyint honours the default rounding mode, i.e. ties to even.
  return static_cast<std::int64_t>(std::nearbyint(value * 1e6));
}

const RegionNode& DistortionGraph::node(ImageSide side, RegionIndex index) const {
  const auto& nodes = side == ImageSide::kAnchor ? anchor_nodes : target_nodes;
  auto it = std::find_if(nodes.begin(), nodes.end(),
                         [&](const RegionNode& n) { return n.index == index; });
  if (it == nodes.end()) {
    throw Error(ErrorCode::kUnknownRegion, "no region " + std::to_string(index));
  }
  return *it;
}

const DistortionEdge& DistortionGraph::edge(RegionIndex index) const {
  auto it = std::find_if(distortion_edges.begin(), distortion_edges.end(),
                         [&](const DistortionEdge& e) {
                           return e.anchor_region == index && e.target_region == index &&
                                  e.from_side == ImageSide::kAnchor &&
                                  e.to_side == ImageSide::kTarget;
                         });
  if (it == distortion_edges.end()) {
    throw Error(ErrorCode::kUnknownRegion, "no comparison edge for region " + std::to_string(index));
  }
  return *it;
}

std::string_view to_string(Definition definition) {
  switch (definition) {
    case Definition::kValidity: return "VALIDITY";
    case Definition::kOrdering: return "ORDERING";
    case Definition::kFunctional: return "FUNCTIONAL";
    case Definition::kStructural: return "STRUCTURAL";
  }
  return "UNKNOWN";
}

std::vector<Violation> validate(const DistortionGraph& graph) {
  std::vector<Violation> out;
  for (auto& issue : collect_issues(graph)) out.push_back(std::move(issue.violation));
  return out;
}

void canonicalize(DistortionGraph& graph) {
  auto by_index = [](const RegionNode& a, const RegionNode& b) { return a.index < b.index; };
  for (auto* nodes : {&graph.anchor_nodes, &graph.target_nodes}) {
    std::stable_sort(nodes->begin(), nodes->end(), by_index);
    for (auto& n : *nodes) n.score = quantize_score(n.score);
  }
  std::stable_sort(graph.distortion_edges.begin(), graph.distortion_edges.end(),
                   [](const auto& a, const auto& b) { return edge_key(a) < edge_key(b); });
  std::stable_sort(graph.scene_edges.begin(), graph.scene_edges.end(),
                   [](const auto& a, const auto& b) { return scene_key(a) < scene_key(b); });
}

DistortionGraph build_graph(std::string pair_id, std::vector<RegionNode> anchor_nodes,
                            std::vector<RegionNode> target_nodes,
                            std::vector<DistortionEdge> edges,
                            std::vector<SceneEdge> scene_edges, GraphRefs refs) {
  DistortionGraph g;
  g.pair_id = std::move(pair_id);
  g.refs = std::move(refs);
  g.anchor_nodes = std::move(anchor_nodes);
  g.target_nodes = std::move(target_nodes);
  g.distortion_edges = std::move(edges);
  g.scene_edges = std::move(scene_edges);
  for (auto* nodes : {&g.anchor_nodes, &g.target_nodes}) {
    for (auto& n : *nodes) {
      if (n.mask_ref == 0 && n.index <= 0xFFFF) n.mask_ref = static_cast<std::uint16_t>(n.index);
    }
  }
  canonicalize(g);

  const auto issues = collect_issues(g);
  if (issues.empty()) return g;
  // Report the most specific failure class first.
  for (ErrorCode code : {ErrorCode::kScoreOutOfRange, ErrorCode::kIndexMismatch,
                         ErrorCode::kInvalidLabel, ErrorCode::kEdgeViolation}) {
    for (const auto& issue : issues) {
      if (issue.code == code) {
        throw Error(code, "graph '" + g.pair_id + "': " +
                              std::string(to_string(issue.violation.definition)) + " at " +
                              issue.violation.element + ": " + issue.violation.message);
      }
    }
  }
  throw Error(ErrorCode::kValidationError, "graph '" + g.pair_id + "' is invalid");
}

DistortionEdge make_edge(RegionIndex index, Relation relation) {
  return DistortionEdge{index, relation, index, ImageSide::kAnchor, ImageSide::kTarget};
}

DistortionGraph grounded_subgraph(const DistortionGraph& graph, RegionIndex index) {
  if (index < 1 || index > graph.region_count()) {
    throw Error(ErrorCode::kUnknownRegion, "region " + std::to_string(index) + " not in 1.." +
                                               std::to_string(graph.region_count()));
  }
  DistortionGraph sub;
  sub.pair_id = graph.pair_id;
  sub.refs = graph.refs;
  RegionNode a = graph.node(ImageSide::kAnchor, index);
  RegionNode t = graph.node(ImageSide::kTarget, index);
  a.index = 1;
  t.index = 1;
  sub.anchor_nodes.push_back(std::move(a));
  sub.target_nodes.push_back(std::move(t));
  DistortionEdge e = graph.edge(index);
  e.anchor_region = 1;
  e.target_region = 1;
  sub.distortion_edges.push_back(e);
  for (const SceneEdge& s : graph.scene_edges) {
    if (s.subject_region == index && s.object_region == index) {
      sub.scene_edges.push_back(SceneEdge{1, s.predicate, 1, s.side});
    }
  }
  return sub;
}

}  // namespace dgkit
