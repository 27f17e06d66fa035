// Copyright 2026 The qkd3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QKD3_TOOLS_CLI_HPP
#define QKD3_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qkd3::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitTamperAbort = 2;

/// Seed used when neither --seed nor a config file sets one.
inline constexpr const char* kSeedEnvVar = "QKD3_SEED";

/// Entry point of the qkd3 tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qkd3::cli

#endif  // QKD3_TOOLS_CLI_HPP
