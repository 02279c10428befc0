// Copyright 2026 The eb92 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eb92::cli {

enum ExitCode {
    kExitOk = 0,
    kExitUsage = 1,
    kExitComputation = 2,
    kExitValidation = 3,
};

/// Runs `eb92 <command> [flags]`. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Expands `--config FILE` into flags. Keys in the file are flag names
/// without dashes; flags already on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string> &args);

}  // namespace eb92::cli
