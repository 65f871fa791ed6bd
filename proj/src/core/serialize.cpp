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

#include <cinttypes>
#include <cstdio>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dgkit/error.hpp"

namespace dgkit {
namespace {

using nlohmann::json;

std::string quote(std::string_view s) { return json(std::string(s)).dump(); }

void write_node(std::ostringstream& os, const RegionNode& n) {
  os << "{\"index\": " << n.index << ", \"class\": " << quote(n.class_name)
     << ", \"side\": " << quote(to_string(n.side)) << ", \"distortion\": {\"family\": "
     << quote(to_string(n.distortion.family)) << ", \"subtype\": " << quote(n.distortion.subtype)
     << "}, \"severity\": " << quote(to_string(n.severity))
     << ", \"score\": " << format_score(n.score);
  if (n.mask_ref != n.index) os << ", \"mask\": " << n.mask_ref;
  if (!n.scene_attributes.empty()) {
    os << ", \"attributes\": [";
    for (std::size_t k = 0; k < n.scene_attributes.size(); ++k) {
      os << (k ? ", " : "") << quote(n.scene_attributes[k]);
    }
    os << "]";
  }
  os << "}";
}

void write_edge(std::ostringstream& os, const DistortionEdge& e) {
  os << "{\"index\": " << e.anchor_region << ", \"relation\": " << quote(to_string(e.relation));
  if (e.from_side != ImageSide::kAnchor) os << ", \"from\": " << quote(to_string(e.from_side));
  if (e.to_side != ImageSide::kTarget) os << ", \"to\": " << quote(to_string(e.to_side));
  if (e.target_region != e.anchor_region) os << ", \"target_index\": " << e.target_region;
  os << "}";
}

void write_scene_edge(std::ostringstream& os, const SceneEdge& s) {
  os << "{\"subject\": " << s.subject_region << ", \"predicate\": " << quote(s.predicate)
     << ", \"object\": " << s.object_region << ", \"side\": " << quote(to_string(s.side)) << "}";
}

template <typename T, typename Writer>
void write_array(std::ostringstream& os, const std::vector<T>& items, Writer writer) {
  if (items.empty()) {
    os << "[]";
    return;
  }
  os << "[\n";
  for (std::size_t k = 0; k < items.size(); ++k) {
    os << "    ";
    writer(os, items[k]);
    os << (k + 1 < items.size() ? ",\n" : "\n");
  }
  os << "  ]";
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError("invalid graph document at " + path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing key '") + key + "'");
  return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) schema_error(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::uint32_t get_index(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    schema_error(path, "expected a non-negative 32-bit integer");
  }
  return static_cast<std::uint32_t>(v.get<std::uint64_t>());
}

template <typename Parser>
auto get_enum(const json& obj, const char* key, const std::string& path, Parser parse) {
  const std::string text = get_string(obj, key, path);
  auto value = parse(text);
  if (!value) schema_error(path + "/" + key, "unknown value '" + text + "'");
  return *value;
}

RegionNode read_node(const json& r, const std::string& path) {
  if (!r.is_object()) schema_error(path, "expected an object");
  RegionNode n;
  n.index = get_index(field(r, "index", path), path + "/index");
  n.class_name = get_string(r, "class", path);
  n.side = get_enum(r, "side", path, parse_side);
  const json& d = field(r, "distortion", path);
  if (!d.is_object()) schema_error(path + "/distortion", "expected an object");
  n.distortion.family = get_enum(d, "family", path + "/distortion", parse_family);
  n.distortion.subtype = get_string(d, "subtype", path + "/distortion");
  n.severity = get_enum(r, "severity", path, parse_severity);
  const json& s = field(r, "score", path);
  if (!s.is_number()) schema_error(path + "/score", "expected a number");
  n.score = quantize_score(s.get<double>());
  n.mask_ref = static_cast<std::uint16_t>(n.index);
  if (auto it = r.find("mask"); it != r.end()) {
    const std::uint32_t mask = get_index(*it, path + "/mask");
    if (mask > 0xFFFF) schema_error(path + "/mask", "mask value exceeds 16 bits");
    n.mask_ref = static_cast<std::uint16_t>(mask);
  }
  if (auto it = r.find("attributes"); it != r.end()) {
    if (!it->is_array()) schema_error(path + "/attributes", "expected an array");
    for (const auto& a : *it) {
      if (!a.is_string()) schema_error(path + "/attributes", "expected strings");
      n.scene_attributes.push_back(a.get<std::string>());
    }
  }
  return n;
}

DistortionEdge read_edge(const json& e, const std::string& path) {
  if (!e.is_object()) schema_error(path, "expected an object");
  DistortionEdge edge;
  edge.anchor_region = get_index(field(e, "index", path), path + "/index");
  edge.target_region = edge.anchor_region;
  edge.relation = get_enum(e, "relation", path, parse_relation);
  if (e.contains("from")) edge.from_side = get_enum(e, "from", path, parse_side);
  if (e.contains("to")) edge.to_side = get_enum(e, "to", path, parse_side);
  if (auto it = e.find("target_index"); it != e.end()) {
    edge.target_region = get_index(*it, path + "/target_index");
  }
  return edge;
}

SceneEdge read_scene_edge(const json& e, const std::string& path) {
  if (!e.is_object()) schema_error(path, "expected an object");
  SceneEdge s;
  s.subject_region = get_index(field(e, "subject", path), path + "/subject");
  s.predicate = get_string(e, "predicate", path);
  s.object_region = get_index(field(e, "object", path), path + "/object");
  s.side = get_enum(e, "side", path, parse_side);
  return s;
}

const json& get_array(const json& doc, const char* key) {
  const json& v = field(doc, key, "");
  if (!v.is_array()) schema_error(std::string("/") + key, "expected an array");
  return v;
}

}  // namespace

std::string format_score(double value) {
  const std::int64_t micros = score_micros(value);
  const std::uint64_t magnitude =
      micros < 0 ? static_cast<std::uint64_t>(-(micros + 1)) + 1 : static_cast<std::uint64_t>(micros);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%" PRIu64 ".%06" PRIu64, micros < 0 ? "-" : "",
                magnitude / 1000000, magnitude % 1000000);
  return buf;
}

std::string serialize(const DistortionGraph& graph, SerializeOptions options) {
  DistortionGraph g = graph;
  canonicalize(g);
  if (!options.allow_invalid) {
    const auto violations = validate(g);
    if (!violations.empty()) {
      throw Error(ErrorCode::kValidationError,
                  "refusing to serialize invalid graph '" + g.pair_id + "': " +
                      std::string(to_string(violations.front().definition)) + " at " +
                      violations.front().element);
    }
  }

  // Interleave sides: A1, T1, A2, T2, ...
  std::vector<RegionNode> regions;
  regions.reserve(g.anchor_nodes.size() + g.target_nodes.size());
  std::size_t a = 0, t = 0;
  while (a < g.anchor_nodes.size() || t < g.target_nodes.size()) {
    if (t == g.target_nodes.size() ||
        (a < g.anchor_nodes.size() && g.anchor_nodes[a].index <= g.target_nodes[t].index)) {
      regions.push_back(g.anchor_nodes[a++]);
    } else {
      regions.push_back(g.target_nodes[t++]);
    }
  }

  std::ostringstream os;
  os << "{\n  \"version\": " << kGraphFormatVersion << ",\n  \"pair_id\": " << quote(g.pair_id)
     << ",\n  \"anchor_image\": " << quote(g.refs.anchor_image)
     << ",\n  \"target_image\": " << quote(g.refs.target_image)
     << ",\n  \"label_map\": " << quote(g.refs.label_map) << ",\n  \"regions\": ";
  write_array(os, regions, write_node);
  os << ",\n  \"distortion_edges\": ";
  write_array(os, g.distortion_edges, write_edge);
  if (!g.scene_edges.empty()) {
    os << ",\n  \"scene_edges\": ";
    write_array(os, g.scene_edges, write_scene_edge);
  }
  os << "\n}\n";
  return os.str();
}

DistortionGraph deserialize(std::string_view bytes, DeserializeOptions options) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed graph document: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) schema_error("", "expected a top-level object");
  const json& version = field(doc, "version", "");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kGraphFormatVersion) {
    schema_error("/version", "unsupported format version");
  }

  DistortionGraph g;
  g.pair_id = get_string(doc, "pair_id", "");
  g.refs.anchor_image = get_string(doc, "anchor_image", "");
  g.refs.target_image = get_string(doc, "target_image", "");
  g.refs.label_map = get_string(doc, "label_map", "");

  const json& regions = get_array(doc, "regions");
  for (std::size_t k = 0; k < regions.size(); ++k) {
    RegionNode n = read_node(regions[k], "/regions/" + std::to_string(k));
    (n.side == ImageSide::kAnchor ? g.anchor_nodes : g.target_nodes).push_back(std::move(n));
  }
  const json& edges = get_array(doc, "distortion_edges");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    g.distortion_edges.push_back(read_edge(edges[k], "/distortion_edges/" + std::to_string(k)));
  }
  if (doc.contains("scene_edges")) {
    const json& scene = get_array(doc, "scene_edges");
    for (std::size_t k = 0; k < scene.size(); ++k) {
      g.scene_edges.push_back(read_scene_edge(scene[k], "/scene_edges/" + std::to_string(k)));
    }
  }
  canonicalize(g);

  if (!options.lenient) {
    const auto violations = validate(g);
    if (!violations.empty()) {
      std::string message = "graph '" + g.pair_id + "' violates:";
      for (const auto& v : violations) {
        message += " [" + std::string(to_string(v.definition)) + " at " + v.element + "]";
      }
      throw Error(ErrorCode::kValidationError, message);
    }
  }
  return g;
}

}  // namespace dgkit
