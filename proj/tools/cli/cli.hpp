// Copyright 2026 The widthapx Authors
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

#ifndef WIDTHAPX_TOOLS_CLI_HPP_
#define WIDTHAPX_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "widthapx/solvers.hpp"

namespace widthapx::cli {

enum ExitCode {
  kExitOk = 0,
  kExitInfeasible = 2,
  kExitUsage = 3,
  kExitInput = 4,
  kExitInternal = 5,
};

// Default constant of the randomized δ preset, picked per problem from
// bench runs (see README). --c0 overrides it.
constexpr double kDefaultC0 = 1e-5;
double default_c0(Problem p);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace widthapx::cli

#endif  // WIDTHAPX_TOOLS_CLI_HPP_
