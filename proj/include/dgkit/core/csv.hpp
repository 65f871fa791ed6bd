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

// Minimal reader for the toolkit's flat CSV files: comma separated, no
// quoting, first line is a fixed header. Line numbers are 1-based and count
// the header.

#ifndef DGKIT_CORE_CSV_HPP_
#define DGKIT_CORE_CSV_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dgkit::csv {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Splits `bytes` into rows, checks the header and the field count of every
// row. Blank lines and a trailing newline are ignored; "\r\n" is accepted.
// Throws ParseError with the offending line.
std::vector<Row> read(std::string_view bytes, std::string_view expected_header);

// Decimal in [0, 1] with at most six fractional digits ("1", "0.25",
// "0.123456"). Throws ParseError naming `line` on malformed text and
// Error(kScoreOutOfRange) when the value lies outside [0, 1].
double parse_score(std::string_view text, std::size_t line);

// Unsigned decimal integer; throws ParseError.
std::uint64_t parse_uint(std::string_view text, std::size_t line);

}  // namespace dgkit::csv

#endif  // DGKIT_CORE_CSV_HPP_
