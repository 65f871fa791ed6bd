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

// Helpers shared by the unit tests and the acceptance binary.

#ifndef DGKIT_TESTS_SUPPORT_HPP_
#define DGKIT_TESTS_SUPPORT_HPP_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "dgkit/core/graph.hpp"
#include "dgkit/core/labels.hpp"
#include "dgkit/synth/image.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit::testing {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("dgkit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline RegionNode random_node(Rng& rng, RegionIndex index, ImageSide side) {
  RegionNode n;
  n.index = index;
  n.class_name = "class_" + std::to_string(rng.below(7));
  n.side = side;
  n.mask_ref = static_cast<std::uint16_t>(index);
  if (rng.bernoulli(0.2)) {
    n.distortion = clean_label();
    n.severity = Severity::kNone;
  } else {
    const Family f = degrading_families()[rng.below(kNumDegradingFamilies)];
    n.distortion = {f, std::string(default_subtype(f))};
    n.severity = kDegradingSeverities[rng.below(3)];
  }
  n.score = quantize_score(rng.uniform());
  if (rng.bernoulli(0.1)) n.scene_attributes = {"attr_" + std::to_string(rng.below(5))};
  return n;
}

// A well-formed graph with 1..max_regions matched regions, optionally with
// scene edges.
inline DistortionGraph random_graph(Rng& rng, RegionIndex max_regions = 20, bool scene_edges = true) {
  const RegionIndex n = 1 + static_cast<RegionIndex>(rng.below(max_regions));
  std::vector<RegionNode> anchors, targets;
  std::vector<DistortionEdge> edges;
  for (RegionIndex i = 1; i <= n; ++i) {
    anchors.push_back(random_node(rng, i, ImageSide::kAnchor));
    targets.push_back(random_node(rng, i, ImageSide::kTarget));
    targets.back().class_name = anchors.back().class_name;
    edges.push_back(make_edge(i, static_cast<Relation>(rng.below(kNumRelations))));
  }
  std::vector<SceneEdge> scene;
  if (scene_edges && n > 1 && rng.bernoulli(0.3)) {
    scene.push_back({1 + static_cast<RegionIndex>(rng.below(n)), "next to",
                     1 + static_cast<RegionIndex>(rng.below(n)),
                     rng.bernoulli(0.5) ? ImageSide::kAnchor : ImageSide::kTarget});
  }
  return build_graph("pair_" + std::to_string(rng.next() % 100000), std::move(anchors), std::move(targets),
                     std::move(edges), std::move(scene), {"a.ppm", "t.ppm", "m.pgm"});
}

// The definitions named by a violation list.
inline std::set<Definition> definitions(const std::vector<Violation>& violations) {
  std::set<Definition> out;
  for (const Violation& v : violations) out.insert(v.definition);
  return out;
}

// Deterministic textured RGB image.
inline RasterImage test_image(int width, int height, std::uint64_t seed) {
  RasterImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        const double u = counter_uniform(seed, (std::uint64_t(y) * width + x) * 3 + c);
        img.at(x, y, c) = static_cast<std::uint8_t>(40 + (x * 3 + y * 2 + c * 50) % 140 + u * 60);
      }
    }
  }
  return img;
}

// Every file under `root` with its bytes, keyed by relative path.
inline std::vector<std::pair<std::string, std::string>> tree_contents(const std::filesystem::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    out.emplace_back(std::filesystem::relative(e.path(), root).string(), std::move(bytes));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dgkit::testing

#endif  // DGKIT_TESTS_SUPPORT_HPP_
