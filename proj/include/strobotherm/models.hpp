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

// Thermometer models: a driven two-level probe in resonance fluorescence and
// a multi-level probe with detailed-balance rates, plus their closed forms.
//
// Qubit basis is (excited, ground): sigma_+ = |e><g|, sigma_+ sigma_- = |e><e|.

#ifndef STROBOTHERM_MODELS_HPP
#define STROBOTHERM_MODELS_HPP

#include "strobotherm/ansatz.hpp"
#include "strobotherm/liouville.hpp"
#include "strobotherm/matcore.hpp"

namespace strobotherm {

struct QubitParams {
  double omega0 = 1.0;       // transition frequency
  double delta_omega = 0.0;  // Lamb shift
  double Omega = 0.0;        // Rabi frequency
  double gamma = 0.5;        // decay rate
  double beta0 = 1.0;        // bath inverse temperature
  double dt = 0.1;           // time between measurements

  /// Throws ValidationError unless gamma, omega0, dt > 0 and all are finite.
  void validate() const;
};

/// Drive coefficient c in the second-order qubit term c Omega^2 dt (omega0 - 2E).
/// The stroboscopic expansion gives 1; the reference closed forms carry 2.
inline constexpr double kPrintedDriveCoefficient = 2.0;
inline constexpr double kExpansionDriveCoefficient = 1.0;

/// H = (omega0 + delta_omega) s+s- - Omega (s+ + s-); jumps s- at gamma and
/// s+ at gamma exp(-beta0 omega0).
GkslGenerator qubit_generator(const QubitParams& p);

/// omega0 s+s-, the observable whose expectation is the probe energy.
ComplexMatrix qubit_gibbs_hamiltonian(const QubitParams& p);

/// The two-level Gibbs family in its linear form,
/// rho(E) = (E / omega0) s+s- + (1 - E / omega0) s-s+, with E the energy.
LinearAnsatz qubit_energy_ansatz(const QubitParams& p);

/// gamma0 e^x / (e^x - 1) with x = beta0 omega0. Throws DomainError for x <= 0.
double bosonic_gamma(double gamma0, double beta0, double omega0);

/// <A>_E = -gamma (1 + e^{-b w}) E + gamma w e^{-b w}.
double qubit_A_analytic(double e, const QubitParams& p);
/// <B>_E = gamma^2 e^{-2 b w} (e^{b w} + 1)(E e^{b w} + E - w) + 2 Omega^2 (w - 2E).
double qubit_B_analytic(double e, const QubitParams& p);

/// Closed-form energy equation with lambda = 1:
/// dE/dt = <A>_E + c Omega^2 dt (omega0 - 2E).
double qubit_rhs_closed_form(double e, const QubitParams& p,
                             double drive = kPrintedDriveCoefficient);
double qubit_E_stationary(const QubitParams& p, double drive = kPrintedDriveCoefficient);
double qubit_tau(const QubitParams& p, double drive = kPrintedDriveCoefficient);
/// E(t) = exp(-t / tau) (E0 - E_st) + E_st. Throws DomainError for t < 0.
double qubit_E_closed_form(double t, double e0, const QubitParams& p,
                           double drive = kPrintedDriveCoefficient);
/// beta0 - ln((1 + r e^{beta0 omega0}) / (1 + r)) / omega0, r = c Omega^2 dt / gamma.
double qubit_beta_stationary(const QubitParams& p, double drive = kPrintedDriveCoefficient);

struct MultilevelParams {
  RealVector omegas;      // ascending levels
  RealVector lamb;        // per-level shifts; empty means zero
  RealMatrix base_rates;  // (i, j) with omegas(i) < omegas(j): rate of |i><j|
  double beta0 = 1.0;

  void validate() const;
  Eigen::Index dim() const { return omegas.size(); }
  /// Full rate matrix: downward entries from base_rates, upward entries
  /// gamma_ji = gamma_ij exp(-beta0 (omega_j - omega_i)).
  RealMatrix rates() const;
};

/// H = sum_j (omega_j + lamb_j) |j><j|; jump |i><j| at rates()(i, j).
GkslGenerator multilevel_generator(const MultilevelParams& p);

/// diag(omegas).
ComplexMatrix multilevel_gibbs_hamiltonian(const MultilevelParams& p);

/// Energy velocity and curvature of the canonical Gibbs state at beta,
/// summed directly over the detailed-balance rates.
double multilevel_A_analytic(double beta, const MultilevelParams& p);
double multilevel_B_analytic(double beta, const MultilevelParams& p);

}  // namespace strobotherm

#endif  // STROBOTHERM_MODELS_HPP
