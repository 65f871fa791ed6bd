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

#include "dgkit/core/labels.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "dgkit/error.hpp"

namespace dgkit {
namespace {

constexpr std::array<std::string_view, kNumRelations> kRelationNames = {
    "same", "slightly_better", "slightly_worse", "significantly_better", "significantly_worse"};

constexpr std::array<std::string_view, kNumFamilies> kFamilyNames = {
    "blur",   "brightness", "compression", "contrast_strengthen",   "contrast_weaken",
    "darken", "haze",       "noise",       "oversharpen",           "pixelate",
    "rain",   "saturation_strengthen",     "saturation_weaken",     "snow",
    "clean"};

constexpr std::array<std::string_view, kNumFamilies> kDefaultSubtypes = {
    "gaussian",     "luma_gain",    "block_dct",   "affine",          "affine",
    "luma_gain",    "constant",     "gaussian",    "unsharp_mask",    "block_average",
    "procedural_streak",            "hsv_scale",   "hsv_scale",       "procedural_flake",
    "none"};

constexpr std::array<std::string_view, kNumSeverities> kSeverityNames = {"none", "minor",
                                                                         "moderate", "severe"};

class SubtypeRegistry {
 public:
  SubtypeRegistry() {
    for (std::size_t f = 0; f < kNumFamilies; ++f) {
      entries_[static_cast<Family>(f)].emplace(kDefaultSubtypes[f]);
    }
  }

  bool contains(Family family, std::string_view subtype) const {
    std::lock_guard<std::mutex> lock(mu_);
    const auto& names = entries_.at(family);
    return names.find(std::string(subtype)) != names.end();
  }

  void add(Family family, std::string_view subtype) {
    std::lock_guard<std::mutex> lock(mu_);
    entries_[family].emplace(subtype);
  }

  std::vector<std::string> list(Family family) const {
    std::lock_guard<std::mutex> lock(mu_);
    const auto& names = entries_.at(family);
    return {names.begin(), names.end()};
  }

 private:
  mutable std::mutex mu_;
  std::map<Family, std::set<std::string>> entries_;
};

SubtypeRegistry& registry() {
  static SubtypeRegistry instance;
  return instance;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view text) {
  auto it = std::find(names.begin(), names.end(), text);
  if (it == names.end()) return std::nullopt;
  return static_cast<Enum>(it - names.begin());
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexMismatch: return "IndexMismatch";
    case ErrorCode::kEdgeViolation: return "EdgeViolation";
    case ErrorCode::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::kInvalidLabel: return "InvalidLabel";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kUnknownRegion: return "UnknownRegion";
    case ErrorCode::kInvalidCombination: return "InvalidCombination";
    case ErrorCode::kInvalidImage: return "InvalidImage";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kInsufficientScenes: return "InsufficientScenes";
    case ErrorCode::kInvalidSettings: return "InvalidSettings";
    case ErrorCode::kMissingGraph: return "MissingGraph";
    case ErrorCode::kMissingPrediction: return "MissingPrediction";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

const std::array<Family, kNumDegradingFamilies>& degrading_families() {
  static const auto families = [] {
    std::array<Family, kNumDegradingFamilies> out{};
    for (std::size_t f = 0; f < kNumDegradingFamilies; ++f) out[f] = static_cast<Family>(f);
    return out;
  }();
  return families;
}

const std::array<Family, kNumFamilies>& all_families() {
  static const auto families = [] {
    std::array<Family, kNumFamilies> out{};
    for (std::size_t f = 0; f < kNumFamilies; ++f) out[f] = static_cast<Family>(f);
    return out;
  }();
  return families;
}

DistortionLabel clean_label() { return DistortionLabel{Family::kClean, std::string(kNoSubtype)}; }

std::string_view default_subtype(Family family) {
  return kDefaultSubtypes[static_cast<std::size_t>(family)];
}

bool is_registered_subtype(Family family, std::string_view subtype) {
  return registry().contains(family, subtype);
}

void register_subtype(Family family, std::string_view subtype) {
  if (family == Family::kClean && subtype != kNoSubtype) {
    throw Error(ErrorCode::kInvalidLabel, "family clean only admits sub-type 'none'");
  }
  registry().add(family, subtype);
}

std::vector<std::string> registered_subtypes(Family family) { return registry().list(family); }

bool is_consistent(const DistortionLabel& label, Severity severity) {
  if (!is_registered_subtype(label.family, label.subtype)) return false;
  const bool clean = label.family == Family::kClean;
  return clean == (severity == Severity::kNone);
}

std::string_view to_string(ImageSide side) { return side == ImageSide::kAnchor ? "A" : "T"; }

std::string_view to_string(Relation relation) {
  return kRelationNames[static_cast<std::size_t>(relation)];
}

std::string_view to_string(Family family) {
  return kFamilyNames[static_cast<std::size_t>(family)];
}

std::string_view to_string(Severity severity) {
  return kSeverityNames[static_cast<std::size_t>(severity)];
}

std::optional<ImageSide> parse_side(std::string_view text) {
  if (text == "A") return ImageSide::kAnchor;
  if (text == "T") return ImageSide::kTarget;
  return std::nullopt;
}

std::optional<Relation> parse_relation(std::string_view text) {
  return lookup<Relation>(kRelationNames, text);
}

std::optional<Family> parse_family(std::string_view text) {
  return lookup<Family>(kFamilyNames, text);
}

std::optional<Severity> parse_severity(std::string_view text) {
  return lookup<Severity>(kSeverityNames, text);
}

Relation mirror(Relation relation) {
  switch (relation) {
    case Relation::kSame: return Relation::kSame;
    case Relation::kSlightlyBetter: return Relation::kSlightlyWorse;
    case Relation::kSlightlyWorse: return Relation::kSlightlyBetter;
    case Relation::kSignificantlyBetter: return Relation::kSignificantlyWorse;
    case Relation::kSignificantlyWorse: return Relation::kSignificantlyBetter;
  }
  return relation;
}

ImageSide other_side(ImageSide side) {
  return side == ImageSide::kAnchor ? ImageSide::kTarget : ImageSide::kAnchor;
}

}  // namespace dgkit
