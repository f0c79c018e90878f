// Copyright 2026 The FuzzerAid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FUZZERAID_TOOLS_CLI_CLI_H_
#define FUZZERAID_TOOLS_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace fuzzeraid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain failure
inline constexpr int kExitUsage = 2;

// Runs one `fuzzeraid` invocation. args[0] is the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzeraid::cli

#endif  // FUZZERAID_TOOLS_CLI_CLI_H_
