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

// Scenario files: a JSON tree describing a model, an ansatz family, the
// protocols to run and the stroboscopic parameters. See README.md for the
// field reference.

#ifndef STROBOTHERM_TOOLS_SCENARIO_HPP
#define STROBOTHERM_TOOLS_SCENARIO_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "strobotherm/ansatz.hpp"
#include "strobotherm/liouville.hpp"
#include "strobotherm/models.hpp"
#include "strobotherm/strob.hpp"

namespace strobotherm::cli {

/// Malformed or unsupported scenario; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind { kQubit, kMultilevel, kCustom };
enum class AnsatzKind { kGibbsCanonical, kGibbsGeneralized, kPinching, kSelective, kFactorized };
enum class Protocol { kDiscrete, kOde1, kOde2, kOdeTemperature, kClosedForm };

const char* to_string(ModelKind kind);
const char* to_string(AnsatzKind kind);
const char* to_string(Protocol protocol);

struct FitSpec {
  std::optional<RealVector> target;
  std::string trajectory_path;  // CSV written by simulate
  int tail = 1;                 // rows averaged from the end of the trajectory
};

struct Scenario {
  std::string name;
  std::string base_dir;  // directory of the scenario file; relative paths resolve here

  ModelKind model_kind = ModelKind::kQubit;
  QubitParams qubit;
  MultilevelParams multilevel;
  GkslGenerator generator;
  ComplexMatrix gibbs_hamiltonian;  // canonical observable of the model

  AnsatzKind ansatz_kind = AnsatzKind::kGibbsCanonical;
  std::shared_ptr<AnsatzFamily> family;
  const GibbsAnsatz* gibbs = nullptr;  // set for both Gibbs kinds

  std::vector<Protocol> protocols;
  StrobConfig strob;
  std::vector<double> dt_ladder;
  double drive_coefficient = kPrintedDriveCoefficient;

  std::optional<RealVector> initial_e;
  std::optional<RealVector> initial_beta;

  bool cross_check_finite_difference = false;
  bool cross_check_analytic = false;

  FitSpec fit;

  bool has(Protocol p) const;
};

/// Builds a scenario from its JSON tree. Throws ConfigError with a field path
/// on any malformed or unsupported entry.
Scenario parse_scenario(const nlohmann::json& doc);

/// Reads and parses a scenario file.
Scenario load_scenario(const std::string& path);

/// Matrix literal: a list of rows whose entries are numbers or [re, im]
/// pairs, or an object {"re": rows, "im": rows}.
ComplexMatrix parse_matrix(const nlohmann::json& node, const std::string& where);

}  // namespace strobotherm::cli

#endif  // STROBOTHERM_TOOLS_SCENARIO_HPP
