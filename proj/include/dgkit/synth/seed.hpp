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

// Seed derivation and the portable random source used by every sampler.
// Nothing here depends on implementation-defined standard distributions, so
// corpora are byte-identical across platforms and thread counts.

#ifndef DGKIT_SYNTH_SEED_HPP_
#define DGKIT_SYNTH_SEED_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "dgkit/core/labels.hpp"

namespace dgkit {

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Folds values left to right: h = splitmix64(h ^ v).
constexpr std::uint64_t mix64(std::initializer_list<std::uint64_t> values) {
  std::uint64_t h = 0;
  for (std::uint64_t v : values) h = splitmix64(h ^ v);
  return h;
}

// FNV-1a, 64 bit.
constexpr std::uint64_t hash_string(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t side_code(ImageSide side) { return side == ImageSide::kAnchor ? 1 : 2; }

// Per-pair seed: mix64(global_seed, hash(pair_id)).
constexpr std::uint64_t pair_seed(std::uint64_t global_seed, std::string_view pair_id) {
  return mix64({global_seed, hash_string(pair_id)});
}

// Per-region seed: mix64(global_seed, hash(pair_id), side_code, region_index).
// Equal to region_seed_from_pair(pair_seed(global, id), side, index).
constexpr std::uint64_t region_seed_from_pair(std::uint64_t pair, ImageSide side,
                                              std::uint64_t region_index) {
  return splitmix64(splitmix64(pair ^ side_code(side)) ^ region_index);
}

constexpr std::uint64_t region_seed(std::uint64_t global_seed, std::string_view pair_id,
                                    ImageSide side, std::uint64_t region_index) {
  return mix64({global_seed, hash_string(pair_id), side_code(side), region_index});
}

// Counter-based uniform in [0, 1) from (seed, counter); used by kernels that
// must produce the same values regardless of iteration order.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(splitmix64(seed ^ splitmix64(counter)) >> 11) * 0x1.0p-53;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), unbiased (rejection on the top bucket).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dgkit

#endif  // DGKIT_SYNTH_SEED_HPP_
