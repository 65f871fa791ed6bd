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

#include "dgkit/bench/benchgen.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "dgkit/core/serialize.hpp"
#include "dgkit/error.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit {
namespace {

using Json = nlohmann::ordered_json;

bool is_uniform(const Setting& s) { return s.kind() == Setting::Kind::kUniform; }
bool is_mixed(const Setting& s) { return s.kind() == Setting::Kind::kMixed; }

std::string numbered_id(Split split, std::size_t j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%05zu", j);
  return std::string(to_string(split)) + buf;
}

Setting setting_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError("manifest: " + where + ": expected a setting name");
  const auto s = Setting::parse(j.get<std::string>());
  if (!s) throw ParseError("manifest: " + where + ": unknown setting '" + j.get<std::string>() + "'");
  return *s;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError("manifest: " + where + ": missing string '" + key + "'");
  }
  return it->get<std::string>();
}

std::uint64_t uint_field(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_unsigned()) {
    throw ParseError("manifest: " + where + ": missing unsigned integer '" + key + "'");
  }
  return it->get<std::uint64_t>();
}

// Expected family and severity distribution of one node under `setting`.
void add_expectation(const Setting& setting, std::array<double, kNumFamilies>& family,
                     std::array<double, kNumSeverities>& severity) {
  const auto clean = static_cast<std::size_t>(Family::kClean);
  const auto none = static_cast<std::size_t>(Severity::kNone);
  if (setting.kind() == Setting::Kind::kClean) {
    family[clean] += 1.0;
    severity[none] += 1.0;
    return;
  }
  const double degraded = 1.0 - kCleanRegionProbability;
  family[clean] += kCleanRegionProbability;
  severity[none] += kCleanRegionProbability;
  for (Severity s : kDegradingSeverities) {
    severity[static_cast<std::size_t>(s)] += degraded / kDegradingSeverities.size();
  }
  if (is_uniform(setting)) {
    family[static_cast<std::size_t>(setting.family())] += degraded;
  } else {
    for (Family f : degrading_families()) {
      family[static_cast<std::size_t>(f)] += degraded / kNumDegradingFamilies;
    }
  }
}

}  // namespace

std::vector<SettingPair> enumerate_setting_pairs() {
  std::vector<SettingPair> out;
  for (const Setting& a : Setting::all()) {
    for (const Setting& t : Setting::all()) {
      if (!(a == t)) out.emplace_back(a, t);
    }
  }
  return out;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kAll: return "all";
    case Split::kEasy: return "easy";
    case Split::kMedium: return "medium";
    case Split::kHard: return "hard";
  }
  return "";
}

std::optional<Split> parse_split(std::string_view text) {
  for (Split s : {Split::kAll, Split::kEasy, Split::kMedium, Split::kHard}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

bool is_admissible(Split split, const Setting& anchor, const Setting& target) {
  switch (split) {
    case Split::kAll: return !(anchor == target);
    case Split::kEasy: return is_uniform(anchor) && is_uniform(target) && !(anchor == target);
    case Split::kMedium:
      return (is_mixed(anchor) && is_uniform(target)) || (is_uniform(anchor) && is_mixed(target));
    case Split::kHard: return is_mixed(anchor) && is_mixed(target);
  }
  return false;
}

std::vector<SettingPair> admissible_pairs(Split split) {
  if (split == Split::kHard) return {{Setting::mixed(), Setting::mixed()}};
  std::vector<SettingPair> out;
  for (const auto& p : enumerate_setting_pairs()) {
    if (is_admissible(split, p.first, p.second)) out.push_back(p);
  }
  return out;
}

std::string manifest_to_json(const BenchmarkManifest& manifest) {
  Json pairs = Json::array();
  for (const PairRecord& r : manifest.pairs) {
    pairs.push_back(Json{{"pair_id", r.pair_id},
                         {"scene_id", r.scene_id},
                         {"setting_anchor", r.setting_anchor.name()},
                         {"setting_target", r.setting_target.name()},
                         {"seed", r.seed},
                         {"graph_ref", r.graph_ref},
                         {"scene_image", r.scene_image},
                         {"anchor_image", r.anchor_image},
                         {"target_image", r.target_image},
                         {"label_map", r.label_map}});
  }
  const Json doc{{"version", kManifestFormatVersion},
                 {"split", std::string(to_string(manifest.split))},
                 {"global_seed", manifest.global_seed},
                 {"toolkit_version", manifest.toolkit_version},
                 {"pairs", std::move(pairs)}};
  return doc.dump(2) + "\n";
}

BenchmarkManifest manifest_from_json(std::string_view bytes) {
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("manifest: expected a JSON object");
  if (uint_field(doc, "version", "/") != static_cast<std::uint64_t>(kManifestFormatVersion)) {
    throw ParseError("manifest: unsupported version");
  }
  BenchmarkManifest m;
  const auto split = parse_split(string_field(doc, "split", "/"));
  if (!split) throw ParseError("manifest: /split: unknown split");
  m.split = *split;
  m.global_seed = uint_field(doc, "global_seed", "/");
  if (doc.contains("toolkit_version")) m.toolkit_version = string_field(doc, "toolkit_version", "/");
  const auto pairs = doc.find("pairs");
  if (pairs == doc.end() || !pairs->is_array()) throw ParseError("manifest: /pairs: expected an array");
  for (std::size_t k = 0; k < pairs->size(); ++k) {
    const Json& p = (*pairs)[k];
    const std::string where = "/pairs/" + std::to_string(k);
    if (!p.is_object()) throw ParseError("manifest: " + where + ": expected an object");
    PairRecord r;
    r.pair_id = string_field(p, "pair_id", where);
    r.scene_id = string_field(p, "scene_id", where);
    r.setting_anchor = setting_from_json(p.value("setting_anchor", Json()), where + "/setting_anchor");
    r.setting_target = setting_from_json(p.value("setting_target", Json()), where + "/setting_target");
    r.seed = uint_field(p, "seed", where);
    r.graph_ref = string_field(p, "graph_ref", where);
    r.scene_image = string_field(p, "scene_image", where);
    r.anchor_image = string_field(p, "anchor_image", where);
    r.target_image = string_field(p, "target_image", where);
    r.label_map = string_field(p, "label_map", where);
    m.pairs.push_back(std::move(r));
  }
  return m;
}

BuiltPair build_pair(std::string pair_id, const Scene& scene, const Setting& setting_anchor,
                     const Setting& setting_target, std::uint64_t global_seed,
                     const RegionScorer& scorer, const SeverityTable& table) {
  if (setting_anchor == setting_target && !is_mixed(setting_anchor)) {
    throw Error(ErrorCode::kInvalidSettings,
                "pair " + pair_id + ": both sides use setting " + setting_anchor.name());
  }
  const std::uint16_t n = scene.label_map.max_index();
  if (n == 0) throw Error(ErrorCode::kEmptyRegion, "scene " + scene.id + " has no regions");
  if (scene.class_names.size() != n) {
    throw Error(ErrorCode::kIndexMismatch, "scene " + scene.id + " names " +
                                               std::to_string(scene.class_names.size()) +
                                               " classes for " + std::to_string(n) + " regions");
  }

  BuiltPair out;
  PairRecord& r = out.record;
  r.pair_id = std::move(pair_id);
  r.scene_id = scene.id;
  r.setting_anchor = setting_anchor;
  r.setting_target = setting_target;
  r.seed = pair_seed(global_seed, r.pair_id);
  r.graph_ref = "graphs/" + r.pair_id + ".dg.json";
  r.scene_image = "scenes/" + scene.id + ".ppm";
  r.anchor_image = "images/" + r.pair_id + "_A.ppm";
  r.target_image = "images/" + r.pair_id + "_T.ppm";
  r.label_map = "scenes/" + scene.id + ".pgm";

  Rng rng_anchor(mix64({r.seed, side_code(ImageSide::kAnchor)}));
  Rng rng_target(mix64({r.seed, side_code(ImageSide::kTarget)}));
  out.plan_anchor = sample_region_plan(rng_anchor, n, setting_anchor, {r.seed, ImageSide::kAnchor}, table);
  out.plan_target = sample_region_plan(rng_target, n, setting_target, {r.seed, ImageSide::kTarget}, table);
  out.anchor_image = synthesize_side(scene.image, scene.label_map, out.plan_anchor);
  out.target_image = synthesize_side(scene.image, scene.label_map, out.plan_target);

  const auto scores_anchor =
      scorer.score_all({scene.image, out.anchor_image, scene.label_map, r.pair_id, ImageSide::kAnchor}, n);
  const auto scores_target =
      scorer.score_all({scene.image, out.target_image, scene.label_map, r.pair_id, ImageSide::kTarget}, n);

  std::vector<RegionNode> anchors, targets;
  std::vector<DistortionEdge> edges;
  for (std::uint16_t k = 1; k <= n; ++k) {
    const auto node = [&](ImageSide side, const DistortionSpec& spec, double score) {
      RegionNode nd;
      nd.index = k;
      nd.class_name = scene.class_names[k - 1];
      nd.side = side;
      nd.mask_ref = k;
      nd.distortion = spec.label;
      nd.severity = spec.severity;
      nd.score = quantize_score(score);
      return nd;
    };
    anchors.push_back(node(ImageSide::kAnchor, out.plan_anchor[k - 1], scores_anchor[k - 1]));
    targets.push_back(node(ImageSide::kTarget, out.plan_target[k - 1], scores_target[k - 1]));
    edges.push_back(make_edge(k, label_relation(anchors.back().score, targets.back().score)));
  }
  GraphRefs refs{"../" + r.anchor_image, "../" + r.target_image, "../" + r.label_map};
  out.graph = build_graph(r.pair_id, std::move(anchors), std::move(targets), std::move(edges), {},
                          std::move(refs));
  if (const auto v = validate(out.graph); !v.empty()) {
    throw Error(ErrorCode::kValidationError, "generated graph " + r.pair_id + " is invalid: " + v[0].message);
  }
  return out;
}

BuiltSplit build_split(Split split, const std::vector<Scene>& scenes, std::size_t n_pairs,
                       std::uint64_t global_seed, const RegionScorer& scorer,
                       const SplitOptions& options, const SeverityTable& table) {
  BuiltSplit out;
  out.manifest.split = split;
  out.manifest.global_seed = global_seed;
  out.manifest.toolkit_version = options.toolkit_version;
  if (n_pairs == 0) return out;
  if (scenes.empty()) {
    throw Error(ErrorCode::kInsufficientScenes, "split " + std::string(to_string(split)) + " needs at least one scene");
  }
  std::vector<SettingPair> candidates = admissible_pairs(split);
  if (!options.only.empty()) {
    std::vector<SettingPair> kept;
    for (const auto& p : candidates) {
      for (const auto& q : options.only) {
        if (p == q) kept.push_back(p);
      }
    }
    candidates = std::move(kept);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidSettings, "no admissible setting pair for split " + std::string(to_string(split)));
  }

  struct Draw {
    std::size_t setting_pair;
    std::size_t scene;
  };
  const std::uint64_t split_seed = mix64({global_seed, hash_string(to_string(split))});
  std::vector<Draw> draws(n_pairs);
  for (std::size_t j = 0; j < n_pairs; ++j) {
    Rng rng(mix64({split_seed, j}));
    draws[j].setting_pair = rng.below(candidates.size());
    draws[j].scene = rng.below(scenes.size());
  }

  out.pairs.resize(n_pairs);
  std::vector<std::exception_ptr> errors(n_pairs);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n_pairs); ++j) {
    try {
      const auto& [a, t] = candidates[draws[j].setting_pair];
      out.pairs[j] = build_pair(numbered_id(split, j), scenes[draws[j].scene], a, t, global_seed, scorer, table);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const BuiltPair& p : out.pairs) out.manifest.pairs.push_back(p.record);
  return out;
}

void write_split(const std::filesystem::path& directory, const BuiltSplit& split,
                 const std::vector<Scene>& scenes) {
  std::set<std::string> used;
  for (const PairRecord& r : split.manifest.pairs) used.insert(r.scene_id);
  for (const Scene& s : scenes) {
    if (used.count(s.id)) {
      write_image(directory / "scenes" / (s.id + ".ppm"), s.image);
      write_file_atomic(directory / "scenes" / (s.id + ".pgm"), store_label_map(s.label_map));
    }
  }
  for (const BuiltPair& p : split.pairs) {
    write_image(directory / p.record.anchor_image, p.anchor_image);
    write_image(directory / p.record.target_image, p.target_image);
    write_file_atomic(directory / p.record.graph_ref, serialize(p.graph));
  }
  write_file_atomic(directory / "manifest.json", manifest_to_json(split.manifest));
}

std::vector<std::string> check_split_membership(const BenchmarkManifest& manifest) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const PairRecord& r : manifest.pairs) {
    if (!is_admissible(manifest.split, r.setting_anchor, r.setting_target)) {
      out.push_back(r.pair_id + ": (" + r.setting_anchor.name() + ", " + r.setting_target.name() +
                    ") is not admissible in split " + std::string(to_string(manifest.split)));
    }
    if (!seen.insert(r.pair_id).second) out.push_back(r.pair_id + ": duplicate pair id");
  }
  return out;
}

LoadedManifest read_manifest(const std::filesystem::path& path) {
  return {manifest_from_json(read_file(path)), path.parent_path()};
}

DistortionGraph load_pair_graph(const LoadedManifest& manifest, const PairRecord& record) {
  const auto path = manifest.directory / record.graph_ref;
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kMissingGraph, "pair " + record.pair_id + ": graph not found at " + path.string());
  }
  return deserialize(read_file(path));
}

std::vector<DistortionGraph> load_graphs(const LoadedManifest& manifest) {
  std::vector<DistortionGraph> out;
  out.reserve(manifest.manifest.pairs.size());
  for (const PairRecord& r : manifest.manifest.pairs) out.push_back(load_pair_graph(manifest, r));
  return out;
}

CorpusSummary summarize_graphs(const std::vector<PairRecord>& records,
                               const std::vector<DistortionGraph>& graphs, double tolerance) {
  CorpusSummary s;
  s.tolerance = tolerance;
  std::array<double, kNumFamilies> fam_mass{};
  std::array<double, kNumSeverities> sev_mass{};
  for (std::size_t k = 0; k < graphs.size() && k < records.size(); ++k) {
    for (const auto& [nodes, setting] :
         {std::pair{&graphs[k].anchor_nodes, records[k].setting_anchor},
          std::pair{&graphs[k].target_nodes, records[k].setting_target}}) {
      for (const RegionNode& n : *nodes) {
        ++s.regions;
        ++s.family_counts[static_cast<std::size_t>(n.distortion.family)];
        ++s.severity_counts[static_cast<std::size_t>(n.severity)];
        add_expectation(setting, fam_mass, sev_mass);
      }
    }
  }
  if (s.regions == 0) return s;
  const double total = static_cast<double>(s.regions);
  for (std::size_t f = 0; f < kNumFamilies; ++f) {
    s.family_observed[f] = s.family_counts[f] / total;
    s.family_expected[f] = fam_mass[f] / total;
    if (std::abs(s.family_observed[f] - s.family_expected[f]) > tolerance) {
      s.flags.push_back("family " + std::string(to_string(static_cast<Family>(f))) + ": observed " +
                        std::to_string(s.family_observed[f]) + ", expected " +
                        std::to_string(s.family_expected[f]));
    }
  }
  for (std::size_t v = 0; v < kNumSeverities; ++v) {
    s.severity_observed[v] = s.severity_counts[v] / total;
    s.severity_expected[v] = sev_mass[v] / total;
    if (std::abs(s.severity_observed[v] - s.severity_expected[v]) > tolerance) {
      s.flags.push_back("severity " + std::string(to_string(static_cast<Severity>(v))) + ": observed " +
                        std::to_string(s.severity_observed[v]) + ", expected " +
                        std::to_string(s.severity_expected[v]));
    }
  }
  return s;
}

CorpusSummary summarize_corpus(const std::vector<LoadedManifest>& manifests, double tolerance) {
  std::vector<PairRecord> records;
  std::vector<DistortionGraph> graphs;
  for (const LoadedManifest& m : manifests) {
    for (const PairRecord& r : m.manifest.pairs) {
      records.push_back(r);
      graphs.push_back(load_pair_graph(m, r));
    }
  }
  return summarize_graphs(records, graphs, tolerance);
}

std::string CorpusSummary::to_json() const {
  Json families = Json::object();
  for (Family f : all_families()) {
    const auto i = static_cast<std::size_t>(f);
    families[std::string(to_string(f))] =
        Json{{"count", family_counts[i]}, {"observed", family_observed[i]}, {"expected", family_expected[i]}};
  }
  Json severities = Json::object();
  for (std::size_t v = 0; v < kNumSeverities; ++v) {
    severities[std::string(to_string(static_cast<Severity>(v)))] =
        Json{{"count", severity_counts[v]}, {"observed", severity_observed[v]}, {"expected", severity_expected[v]}};
  }
  const Json doc{{"regions", regions},
                 {"tolerance", tolerance},
                 {"families", std::move(families)},
                 {"severities", std::move(severities)},
                 {"flags", flags}};
  return doc.dump(2) + "\n";
}

}  // namespace dgkit
