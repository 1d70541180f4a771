// Copyright 2026 The alexglue Authors.
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

#ifndef ALEXGLUE_CLI_HPP
#define ALEXGLUE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace alexglue::cli {

inline constexpr const char* kToolName = "alexglue";
inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alexglue::cli

#endif  // ALEXGLUE_CLI_HPP
