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

// The `dgkit` command line, callable in-process.

#ifndef DGKIT_CLI_APP_HPP_
#define DGKIT_CLI_APP_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dgkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain failure: invalid data, failed checks
inline constexpr int kExitUsage = 2;    // bad arguments, unreadable or unwritable paths

std::string_view toolkit_version();

// `args` excludes the program name, e.g. {"synth", "--seed", "7", "--out", "corpus"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dgkit::cli

#endif  // DGKIT_CLI_APP_HPP_
