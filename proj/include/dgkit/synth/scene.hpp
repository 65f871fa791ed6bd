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

#ifndef DGKIT_SYNTH_SCENE_HPP_
#define DGKIT_SYNTH_SCENE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dgkit/synth/image.hpp"

namespace dgkit {

// A clean source image with its region label map. class_names[k] names
// region k + 1.
struct Scene {
  std::string id;
  RasterImage image;
  LabelMap label_map;
  std::vector<std::string> class_names;

  std::size_t region_count() const { return class_names.size(); }
};

struct ProceduralSceneOptions {
  int width = 96;
  int height = 96;
  int min_regions = 4;
  int max_regions = 16;
};

// Seeded Voronoi partition with textured regions (stripes, gradient and
// per-pixel grain), so every region carries structure for full-reference
// scoring.
Scene make_procedural_scene(std::uint64_t seed, const ProceduralSceneOptions& options = {},
                            std::string id = "");

// Scenes "scene_000" .. with seeds derived from `seed`.
std::vector<Scene> make_procedural_scenes(std::size_t count, std::uint64_t seed,
                                          const ProceduralSceneOptions& options = {});

// Reads `<id>.ppm` or `<id>.png` with `<id>.pgm` and an optional
// `<id>.classes.txt` (one class name per line; missing names become
// "region_<k>"). Scenes are returned sorted by id. Throws kIoError if the
// directory does not exist and kInvalidImage for inconsistent inputs.
std::vector<Scene> load_scenes(const std::filesystem::path& directory);

// Writes `<id>.ppm`, `<id>.pgm`, `<id>.classes.txt`.
void store_scene(const std::filesystem::path& directory, const Scene& scene);

}  // namespace dgkit

#endif  // DGKIT_SYNTH_SCENE_HPP_
