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

#ifndef DGKIT_ERROR_HPP_
#define DGKIT_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dgkit {

enum class ErrorCode {
  kIndexMismatch,
  kEdgeViolation,
  kScoreOutOfRange,
  kInvalidLabel,
  kParseError,
  kValidationError,
  kUnknownRegion,
  kInvalidCombination,
  kInvalidImage,
  kDimensionMismatch,
  kEmptyRegion,
  kOutOfRange,
  kDuplicateKey,
  kInsufficientScenes,
  kInvalidSettings,
  kMissingGraph,
  kMissingPrediction,
  kEmptyGraph,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// All toolkit failures are reported through this exception type; `code()`
// identifies the contract-level error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the byte offset of the failure when the underlying
// reader knows it, or the line number for line-oriented formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::optional<std::size_t> byte_offset = std::nullopt,
             std::optional<std::size_t> line = std::nullopt)
      : Error(ErrorCode::kParseError, message), byte_offset_(byte_offset), line_(line) {}

  std::optional<std::size_t> byte_offset() const noexcept { return byte_offset_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> byte_offset_;
  std::optional<std::size_t> line_;
};

}  // namespace dgkit

#endif  // DGKIT_ERROR_HPP_
