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

#include "dgkit/core/csv.hpp"

#include <charconv>

#include "dgkit/error.hpp"

namespace dgkit::csv {
namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ": " + message, std::nullopt, line);
}

}  // namespace

std::vector<Row> read(std::string_view bytes, std::string_view expected_header) {
  std::vector<Row> rows;
  const std::size_t width = split(expected_header).size();
  std::size_t line_no = 0;
  bool saw_header = false;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != expected_header) {
        fail(line_no, "expected header '" + std::string(expected_header) + "', got '" +
                          std::string(line) + "'");
      }
      saw_header = true;
      continue;
    }
    Row row{line_no, split(line)};
    if (row.fields.size() != width) {
      fail(line_no, "expected " + std::to_string(width) + " fields, got " +
                        std::to_string(row.fields.size()));
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) fail(1, "missing header '" + std::string(expected_header) + "'");
  return rows;
}

double parse_score(std::string_view text, std::size_t line) {
  const std::size_t dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  const auto all_digits = [](std::string_view s) {
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const bool negative = !whole.empty() && whole.front() == '-';
  const std::string_view magnitude = negative ? whole.substr(1) : whole;
  if (magnitude.empty() || !all_digits(magnitude) || !all_digits(frac) ||
      (dot != std::string_view::npos && frac.empty())) {
    fail(line, "malformed score '" + std::string(text) + "'");
  }
  if (frac.size() > 6) fail(line, "score '" + std::string(text) + "' has more than 6 fractional digits");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(line, "malformed score '" + std::string(text) + "'");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::kScoreOutOfRange,
                "line " + std::to_string(line) + ": score " + std::string(text) + " outside [0, 1]");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(line, "malformed integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace dgkit::csv
