// Copyright 2026 The Morphoton Authors
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
//
// The `morphoton` command line. Exit codes: 0 success, 1 quality threshold
// missed, 2 usage or configuration error, 3 runtime error.

#ifndef MORPHOTON_CLI_H_
#define MORPHOTON_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace morphoton {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitQuality = 1, kExitUsage = 2, kExitRuntime = 3 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morphoton

#endif  // MORPHOTON_CLI_H_
