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

// Pair corpora with ground-truth distortion graphs, the benchmark splits and
// their manifests.
//
// On-disk layout of a corpus rooted at the manifest's directory:
//
//   manifest.json
//   scenes/<scene_id>.ppm, scenes/<scene_id>.pgm
//   images/<pair_id>_A.ppm, images/<pair_id>_T.ppm
//   graphs/<pair_id>.dg.json
//
// Manifest paths are relative to the manifest's directory; the image and
// label-map references inside a graph are relative to the graph's directory.

#ifndef DGKIT_BENCH_BENCHGEN_HPP_
#define DGKIT_BENCH_BENCHGEN_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgkit/core/graph.hpp"
#include "dgkit/scoring/scorer.hpp"
#include "dgkit/synth/plan.hpp"
#include "dgkit/synth/scene.hpp"

namespace dgkit {

inline constexpr int kManifestFormatVersion = 1;

using SettingPair = std::pair<Setting, Setting>;

// All 240 ordered pairs of distinct settings, anchor-major in Setting::all()
// order.
std::vector<SettingPair> enumerate_setting_pairs();

// kAll samples from every ordered pair of distinct settings. kEasy: both
// sides Uniform. kMedium: one side Mixed, the other Uniform. kHard: both
// sides Mixed, with independently sampled plans.
enum class Split : std::uint8_t { kAll, kEasy, kMedium, kHard };

std::string_view to_string(Split split);  // "all", "easy", "medium", "hard"
std::optional<Split> parse_split(std::string_view text);

bool is_admissible(Split split, const Setting& anchor, const Setting& target);
// Admissible pairs in enumerate_setting_pairs() order; (Mixed, Mixed) for kHard.
std::vector<SettingPair> admissible_pairs(Split split);

struct PairRecord {
  std::string pair_id;
  std::string scene_id;
  Setting setting_anchor = Setting::clean();
  Setting setting_target = Setting::mixed();
  std::uint64_t seed = 0;  // pair seed, derived from the global seed and pair_id
  std::string graph_ref;
  std::string scene_image;
  std::string anchor_image;
  std::string target_image;
  std::string label_map;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct BenchmarkManifest {
  Split split = Split::kAll;
  std::uint64_t global_seed = 0;
  std::string toolkit_version;
  std::vector<PairRecord> pairs;

  friend bool operator==(const BenchmarkManifest&, const BenchmarkManifest&) = default;
};

// Keys: version, split, global_seed, toolkit_version, pairs. Deterministic
// bytes for equal manifests.
std::string manifest_to_json(const BenchmarkManifest& manifest);
// Throws ParseError.
BenchmarkManifest manifest_from_json(std::string_view bytes);

struct BuiltPair {
  PairRecord record;
  DistortionGraph graph;
  RasterImage anchor_image;
  RasterImage target_image;
  RegionPlan plan_anchor;
  RegionPlan plan_target;
};

// Samples one plan per side (random stream mix64(pair seed, side code)),
// synthesizes both images, scores every region, labels each matched pair
// and validates the graph. Equal settings are rejected with
// kInvalidSettings, except (Mixed, Mixed). Paths in the record follow the
// standard layout.
BuiltPair build_pair(std::string pair_id, const Scene& scene, const Setting& setting_anchor,
                     const Setting& setting_target, std::uint64_t global_seed,
                     const RegionScorer& scorer,
                     const SeverityTable& table = SeverityTable::defaults());

struct BuiltSplit {
  BenchmarkManifest manifest;
  std::vector<BuiltPair> pairs;
};

struct SplitOptions {
  std::string toolkit_version;
  // Restricts the admissible setting pairs further (e.g. one family only).
  std::vector<SettingPair> only;
};

// Pair j is "<split>_<j:05>"; its setting pair and scene are drawn from a
// stream seeded by (global_seed, split, j), so the result depends only on
// the arguments and not on the thread count. Throws kInsufficientScenes
// when n_pairs > 0 and no scene is given.
BuiltSplit build_split(Split split, const std::vector<Scene>& scenes, std::size_t n_pairs,
                       std::uint64_t global_seed, const RegionScorer& scorer,
                       const SplitOptions& options = {},
                       const SeverityTable& table = SeverityTable::defaults());

// Writes the manifest, scenes used, images and graphs under `directory`.
void write_split(const std::filesystem::path& directory, const BuiltSplit& split,
                 const std::vector<Scene>& scenes);

// One message per pair that breaks its split's membership rule.
std::vector<std::string> check_split_membership(const BenchmarkManifest& manifest);

struct LoadedManifest {
  BenchmarkManifest manifest;
  std::filesystem::path directory;
};

LoadedManifest read_manifest(const std::filesystem::path& path);

// Throws kMissingGraph when the file is absent; parse and validation errors
// propagate.
DistortionGraph load_pair_graph(const LoadedManifest& manifest, const PairRecord& record);
std::vector<DistortionGraph> load_graphs(const LoadedManifest& manifest);

// Region fractions over all nodes (both sides) against the fractions the
// settings imply: Clean 0.2 for degrading settings, 0.8 spread over the
// setting's families, severities uniform over the three degrading levels.
struct CorpusSummary {
  std::size_t regions = 0;
  std::array<std::size_t, kNumFamilies> family_counts{};
  std::array<std::size_t, kNumSeverities> severity_counts{};
  std::array<double, kNumFamilies> family_observed{};
  std::array<double, kNumFamilies> family_expected{};
  std::array<double, kNumSeverities> severity_observed{};
  std::array<double, kNumSeverities> severity_expected{};
  double tolerance = 0.01;
  // One entry per fraction whose |observed - expected| exceeds tolerance.
  std::vector<std::string> flags;

  std::string to_json() const;
};

CorpusSummary summarize_corpus(const std::vector<LoadedManifest>& manifests, double tolerance = 0.01);

// Same, from in-memory records and graphs (graphs[k] belongs to records[k]).
CorpusSummary summarize_graphs(const std::vector<PairRecord>& records,
                               const std::vector<DistortionGraph>& graphs, double tolerance = 0.01);

}  // namespace dgkit

#endif  // DGKIT_BENCH_BENCHGEN_HPP_
