// Copyright 2026 The wlra Authors. All Rights Reserved.
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

#ifndef WLRA_TOOLS_CLI_HPP_
#define WLRA_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace wlra::tools {

// Exit codes of the `wlra` command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // bad flags or violated preconditions
inline constexpr int kExitIo = 2;        // unreadable, unwritable, corrupt files
inline constexpr int kExitMismatch = 3;  // verify found a disagreement

/// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wlra::tools

#endif  // WLRA_TOOLS_CLI_HPP_
