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

// Label vocabularies shared by every module: image sides, comparative
// relations, distortion families and sub-types, severities. Each enum has a
// stable serialized spelling used by all file formats.

#ifndef DGKIT_CORE_LABELS_HPP_
#define DGKIT_CORE_LABELS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dgkit {

enum class ImageSide : std::uint8_t { kAnchor, kTarget };

inline constexpr std::array<ImageSide, 2> kAllSides = {ImageSide::kAnchor, ImageSide::kTarget};

// Read as "anchor relative to target".
enum class Relation : std::uint8_t {
  kSame,
  kSlightlyBetter,
  kSlightlyWorse,
  kSignificantlyBetter,
  kSignificantlyWorse,
};

inline constexpr std::size_t kNumRelations = 5;

enum class Family : std::uint8_t {
  kBlur,
  kBrightness,
  kCompression,
  kContrastStrengthen,
  kContrastWeaken,
  kDarken,
  kHaze,
  kNoise,
  kOversharpen,
  kPixelate,
  kRain,
  kSaturationStrengthen,
  kSaturationWeaken,
  kSnow,
  kClean,
};

inline constexpr std::size_t kNumFamilies = 15;
inline constexpr std::size_t kNumDegradingFamilies = 14;

enum class Severity : std::uint8_t { kNone, kMinor, kModerate, kSevere };

inline constexpr std::size_t kNumSeverities = 4;
inline constexpr std::array<Severity, 3> kDegradingSeverities = {
    Severity::kMinor, Severity::kModerate, Severity::kSevere};

// Every family except Clean, in enum order.
const std::array<Family, kNumDegradingFamilies>& degrading_families();
const std::array<Family, kNumFamilies>& all_families();

inline constexpr std::string_view kNoSubtype = "none";

struct DistortionLabel {
  Family family = Family::kClean;
  std::string subtype{kNoSubtype};

  friend bool operator==(const DistortionLabel&, const DistortionLabel&) = default;
};

DistortionLabel clean_label();

// The sub-type implemented by default for `family` (e.g. "gaussian" for Blur).
std::string_view default_subtype(Family family);

// Sub-type registry. Registration is process-wide and thread-safe; the
// default sub-types are always present.
bool is_registered_subtype(Family family, std::string_view subtype);
void register_subtype(Family family, std::string_view subtype);
std::vector<std::string> registered_subtypes(Family family);

// A label is consistent when its sub-type is registered for its family and
// severity None appears exactly with family Clean.
bool is_consistent(const DistortionLabel& label, Severity severity);

std::string_view to_string(ImageSide side);       // "A" | "T"
std::string_view to_string(Relation relation);    // "same", "slightly_better", ...
std::string_view to_string(Family family);        // "blur", "contrast_strengthen", ...
std::string_view to_string(Severity severity);    // "none", "minor", ...

std::optional<ImageSide> parse_side(std::string_view text);
std::optional<Relation> parse_relation(std::string_view text);
std::optional<Family> parse_family(std::string_view text);
std::optional<Severity> parse_severity(std::string_view text);

// Better <-> Worse; Same maps to itself.
Relation mirror(Relation relation);

ImageSide other_side(ImageSide side);

}  // namespace dgkit

#endif  // DGKIT_CORE_LABELS_HPP_
