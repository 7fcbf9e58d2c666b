// Copyright 2026 The strobotherm Authors
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

#ifndef STROBOTHERM_TOOLS_COMMANDS_HPP
#define STROBOTHERM_TOOLS_COMMANDS_HPP

#include <string>

#include "scenario.hpp"

namespace strobotherm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
/// compare: ode2 was not strictly closer to the discrete protocol than ode1.
inline constexpr int kExitNotConverged = 4;

/// Failure to create or write an output file; maps to exit code 3.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Each command writes its files into out_dir and returns an exit code.
/// Library errors propagate to the caller, which maps them to exit codes.
int cmd_simulate(const Scenario& sc, const std::string& out_dir);
int cmd_compare(const Scenario& sc, const std::string& out_dir);
int cmd_fit(const Scenario& sc, const std::string& out_dir);
int cmd_analyze_invariance(const Scenario& sc, const std::string& out_dir);

/// Runs one command by name ("simulate", "compare", "fit",
/// "analyze-invariance") on a scenario file and maps every error to its exit
/// code, printing the message to stderr.
int run_command(const std::string& command, const std::string& scenario_path,
                const std::string& out_dir);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace strobotherm::cli

#endif  // STROBOTHERM_TOOLS_COMMANDS_HPP
