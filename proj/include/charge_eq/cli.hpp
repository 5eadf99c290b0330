// Copyright 2026 The charge_eq Authors.
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

#ifndef CHARGE_EQ_CLI_HPP_
#define CHARGE_EQ_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace charge_eq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

/// Runs one command. args excludes the program name. Primary output goes to
/// out unless --output is given; usage text, errors and (by default)
/// diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, char** argv);

}  // namespace charge_eq::cli

#endif  // CHARGE_EQ_CLI_HPP_
