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

#include "dgkit/synth/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "dgkit/error.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit {
namespace {

constexpr std::array<const char*, 20> kClassNames = {
    "sky",    "wall",  "floor", "tree",   "grass",    "person", "car",  "road",  "building", "water",
    "table",  "chair", "window", "door",  "mountain", "sand",   "bush", "fence", "rock",     "cloud"};

struct RegionStyle {
  std::array<double, 3> base;
  double frequency;
  double angle;
  double phase;
  double stripe_amplitude;
  double gradient;
};

}  // namespace

Scene make_procedural_scene(std::uint64_t seed, const ProceduralSceneOptions& options,
                            std::string id) {
  Rng rng(seed);
  const int w = options.width, h = options.height;
  const int regions =
      options.min_regions + static_cast<int>(rng.below(options.max_regions - options.min_regions + 1));

  std::vector<std::pair<int, int>> sites;
  std::set<std::pair<int, int>> taken;
  while (static_cast<int>(sites.size()) < regions) {
    const std::pair<int, int> p{static_cast<int>(rng.below(w)), static_cast<int>(rng.below(h))};
    if (taken.insert(p).second) sites.push_back(p);
  }

  std::vector<RegionStyle> styles;
  Scene scene;
  scene.id = std::move(id);
  for (int k = 0; k < regions; ++k) {
    RegionStyle s;
    for (double& c : s.base) c = rng.uniform(50.0, 205.0);
    s.frequency = rng.uniform(0.04, 0.22);
    s.angle = rng.uniform(0.0, std::numbers::pi);
    s.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    s.stripe_amplitude = rng.uniform(18.0, 40.0);
    s.gradient = rng.uniform(-0.4, 0.4);
    styles.push_back(s);
    scene.class_names.emplace_back(kClassNames[rng.below(kClassNames.size())]);
  }

  scene.label_map = LabelMap(w, h);
  scene.image = RasterImage(w, h);
  const std::uint64_t grain_seed = splitmix64(seed ^ 0x5CE7E5EEDULL);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int best = 0;
      long best_d = -1;
      for (int k = 0; k < regions; ++k) {
        const long dx = x - sites[k].first, dy = y - sites[k].second;
        const long d = dx * dx + dy * dy;
        if (best_d < 0 || d < best_d) {
          best_d = d;
          best = k;
        }
      }
      scene.label_map.at(x, y) = static_cast<std::uint16_t>(best + 1);
      const RegionStyle& s = styles[best];
      const double u = x * std::cos(s.angle) + y * std::sin(s.angle);
      const double stripe = s.stripe_amplitude * std::sin(2.0 * std::numbers::pi * s.frequency * u + s.phase);
      const double grad = s.gradient * (y - h / 2.0);
      const double grain =
          16.0 * (counter_uniform(grain_seed, std::uint64_t(y) * w + x) - 0.5);
      for (int c = 0; c < 3; ++c) {
        const double v = s.base[c] + stripe * (0.7 + 0.15 * c) + grad + grain;
        scene.image.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
      }
    }
  }
  return scene;
}

std::vector<Scene> make_procedural_scenes(std::size_t count, std::uint64_t seed,
                                          const ProceduralSceneOptions& options) {
  std::vector<Scene> scenes(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(count); ++k) {
    char id[32];
    std::snprintf(id, sizeof id, "scene_%03lld", static_cast<long long>(k));
    scenes[k] = make_procedural_scene(mix64({seed, 0x5CE7EULL, static_cast<std::uint64_t>(k)}),
                                      options, id);
  }
  return scenes;
}

std::vector<Scene> load_scenes(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::kIoError, "scene directory not found: " + directory.string());
  }
  std::map<std::string, fs::path> images;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const auto ext = entry.path().extension();
    if (ext == ".ppm" || ext == ".png") images[entry.path().stem().string()] = entry.path();
  }
  std::vector<Scene> scenes;
  for (const auto& [id, image_path] : images) {
    const fs::path map_path = directory / (id + ".pgm");
    if (!fs::exists(map_path)) {
      throw Error(ErrorCode::kIoError, "scene " + id + " has no label map " + map_path.string());
    }
    Scene scene;
    scene.id = id;
    scene.image = read_image(image_path);
    scene.label_map = read_label_map(map_path).map;
    if (scene.label_map.width() != scene.image.width() ||
        scene.label_map.height() != scene.image.height()) {
      throw Error(ErrorCode::kInvalidImage, "scene " + id + ": label map size differs from image");
    }
    const std::uint16_t regions = scene.label_map.max_index();
    for (std::uint32_t k = 1; k <= regions; ++k) {
      if (scene.label_map.pixel_count(static_cast<std::uint16_t>(k)) == 0) {
        throw Error(ErrorCode::kInvalidImage,
                    "scene " + id + ": region " + std::to_string(k) + " has no pixels");
      }
    }
    scene.class_names.resize(regions);
    const fs::path classes_path = directory / (id + ".classes.txt");
    if (fs::exists(classes_path)) {
      std::istringstream in(read_file(classes_path));
      std::string line;
      for (std::size_t k = 0; k < regions && std::getline(in, line); ++k) scene.class_names[k] = line;
    }
    for (std::size_t k = 0; k < regions; ++k) {
      if (scene.class_names[k].empty()) scene.class_names[k] = "region_" + std::to_string(k + 1);
    }
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

void store_scene(const std::filesystem::path& directory, const Scene& scene) {
  write_image(directory / (scene.id + ".ppm"), scene.image);
  write_file_atomic(directory / (scene.id + ".pgm"), store_label_map(scene.label_map));
  std::string classes;
  for (const auto& name : scene.class_names) classes += name + "\n";
  write_file_atomic(directory / (scene.id + ".classes.txt"), classes);
}

}  // namespace dgkit
