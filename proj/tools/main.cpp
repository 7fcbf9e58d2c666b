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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "strobotherm/kernels.hpp"

namespace {

constexpr const char* kThreadsEnv = "STROBOTHERM_THREADS";

// Applies the thread override from the environment; false if it is malformed.
bool apply_thread_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr || *raw == '\0') return true;
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    std::cerr << "config error: " << kThreadsEnv << " must be a positive integer\n";
    return false;
  }
  strobotherm::kernels::set_thread_count(static_cast<int>(n));
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stroboscopic thermometry: measure-evolve protocols and their master equations"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "Directory for output files (created if missing)");

  std::string scenario;
  const char* commands[][2] = {
      {"simulate", "Run the scenario's protocols; write one CSV each and a JSON summary"},
      {"compare", "Discrete protocol vs first/second-order ODE over the dt ladder"},
      {"fit", "Fit Gibbs parameters to a target or a trajectory tail"},
      {"analyze-invariance", "Check whether span{I, P} is invariant under the generator"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("scenario", scenario, "Scenario file (JSON)")->required();
    sub->add_option("--out-dir", out_dir, "Directory for output files (created if missing)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : strobotherm::cli::kExitConfig;
  }
  if (!apply_thread_env()) return strobotherm::cli::kExitConfig;

  const std::string command = app.get_subcommands().front()->get_name();
  return strobotherm::cli::run_command(command, scenario, out_dir);
}
