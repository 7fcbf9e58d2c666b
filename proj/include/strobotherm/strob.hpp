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

// Repeated measure-evolve protocol and its stroboscopic-limit master
// equations.
//
// One protocol step resets the state to the ansatz posterior and evolves it
// for dt under exp(lambda dt L). In the limit lambda^2 dt = alpha fixed,
// dt -> 0, the ansatz parameters obey
//
//   dE/dt = lambda <A>_E + alpha/2 (<B>_E - (<A>_E, d/dE) <A>_E),
//
// with A = L*(P), B = L*(A) and <X>_E = Tr(X rho(E)).

#ifndef STROBOTHERM_STROB_HPP
#define STROBOTHERM_STROB_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strobotherm/ansatz.hpp"
#include "strobotherm/liouville.hpp"

namespace strobotherm {

/// Largest number of protocol steps run_discrete accepts.
inline constexpr long long kMaxProtocolSteps = 10'000'000;

struct StrobConfig {
  double lambda = 1.0;  // dimensionless coupling
  double dt = 0.1;      // time between measurements
  double alpha = 0.1;   // lambda^2 dt
  double horizon = 1.0; // T
  double ode_step = 0.01;

  /// alpha = lambda^2 dt; ode_step defaults to min(dt / 10, 1e-2).
  static StrobConfig make(double lambda, double dt, double horizon,
                          std::optional<double> ode_step = std::nullopt);
  /// Throws ValidationError on non-positive dt, h, horizon or an alpha that
  /// differs from lambda^2 dt by more than 1e-12 relative.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RealVector> params;
  std::optional<std::vector<RealVector>> temps;
  std::string meta;

  std::size_t size() const { return times.size(); }
  /// Throws ValidationError unless lengths agree and times strictly increase.
  void validate() const;
};

/// Caches exp(lambda dt L) once and advances the protocol step by step.
class DiscreteProtocol {
 public:
  /// Keeps a reference to family, which must outlive the protocol.
  DiscreteProtocol(const GkslGenerator& gen, const AnsatzFamily& family, const StrobConfig& cfg);
  DiscreteProtocol(const GkslGenerator&, const AnsatzFamily&&, const StrobConfig&) = delete;

  /// E' = Tr(P exp(lambda dt L) rho(E)). Domain errors carry the step index.
  RealVector step(const RealVector& e, long long index = 0) const;

  const Propagator& propagator() const { return propagator_; }

 private:
  const AnsatzFamily& family_;
  Propagator propagator_;
};

RealVector discrete_step(const GkslGenerator& gen, const AnsatzFamily& family,
                         const RealVector& e, const StrobConfig& cfg);

/// Samples E after every step, at times n dt for n = 0..round(T / dt).
Trajectory run_discrete(const GkslGenerator& gen, const AnsatzFamily& family,
                        const RealVector& e0, const StrobConfig& cfg);

enum class DerivativeMode { kAnalytic, kFiniteDifference };

/// Heisenberg images L*(P_m) and L*(L*(P_m)), evaluated once per generator
/// and family, with the stroboscopic right-hand sides built on top.
class StrobDynamics {
 public:
  /// Keeps a reference to family, which must outlive this object.
  StrobDynamics(const GkslGenerator& gen, const AnsatzFamily& family, const StrobConfig& cfg);
  StrobDynamics(const GkslGenerator&, const AnsatzFamily&&, const StrobConfig&) = delete;

  const AnsatzFamily& family() const { return family_; }
  const StrobConfig& config() const { return cfg_; }

  /// <A>_E.
  RealVector velocity(const RealVector& e) const;
  /// <B>_E.
  RealVector curvature(const RealVector& e) const;
  /// d<A_m>/dE_j.
  RealMatrix velocity_jacobian(const RealVector& e, DerivativeMode mode) const;
  /// <B>_E - (<A>_E, d/dE) <A>_E.
  RealVector bracket(const RealVector& e, DerivativeMode mode = DerivativeMode::kAnalytic) const;

  RealVector rhs_first_order(const RealVector& e) const;
  RealVector rhs_second_order(const RealVector& e,
                              DerivativeMode mode = DerivativeMode::kAnalytic) const;

  /// Second-order right-hand side from an explicit state and its parameter
  /// derivatives (bypasses the family's parameter-to-state map).
  RealVector rhs_second_order_at(const ComplexMatrix& rho,
                                 const std::vector<ComplexMatrix>& drho_de) const;

 private:
  const AnsatzFamily& family_;
  StrobConfig cfg_;
  std::vector<ComplexMatrix> a_ops_;
  std::vector<ComplexMatrix> b_ops_;
};

RealVector relevant_velocity(const GkslGenerator& gen, const AnsatzFamily& family,
                             const RealVector& e);
RealVector relevant_curvature(const GkslGenerator& gen, const AnsatzFamily& family,
                              const RealVector& e);
RealVector ode_rhs_first_order(const GkslGenerator& gen, const AnsatzFamily& family,
                               const RealVector& e, const StrobConfig& cfg);
RealVector ode_rhs_second_order(const GkslGenerator& gen, const AnsatzFamily& family,
                                const RealVector& e, const StrobConfig& cfg,
                                DerivativeMode mode = DerivativeMode::kAnalytic);

/// C(beta) = dE / d(1/beta) = -beta^2 dE/dbeta for a single-observable Gibbs
/// family. Throws DomainError at beta = 0.
double heat_capacity(const GibbsAnsatz& gibbs, double beta);

/// Canonical temperature equation: d beta/dt = (dE/dt)(E(beta)) * d beta/dE.
/// Throws SingularityError when dE/dbeta vanishes.
class TemperatureDynamics {
 public:
  TemperatureDynamics(const GkslGenerator& gen, const GibbsAnsatz& gibbs, const StrobConfig& cfg);
  TemperatureDynamics(const GkslGenerator&, const GibbsAnsatz&&, const StrobConfig&) = delete;

  double rhs(double beta) const;
  double energy(double beta) const;

 private:
  const GibbsAnsatz& gibbs_;
  StrobDynamics dynamics_;
};

double ode_rhs_temperature(const GkslGenerator& gen, const GibbsAnsatz& gibbs, double beta,
                           const StrobConfig& cfg);

using OdeRhs = std::function<RealVector(double, const RealVector&)>;

/// Classical fixed-step RK4 on [0, horizon]. The step is shrunk uniformly so
/// that an integer number of steps lands on the horizon; samples are kept
/// every record_every steps and at the end. Domain errors from rhs are
/// rethrown with the time stamp.
Trajectory integrate(const OdeRhs& rhs, const RealVector& x0, double horizon, double step,
                     int record_every = 1);
Trajectory integrate(const OdeRhs& rhs, const RealVector& x0, const StrobConfig& cfg);

struct InvariantSubspace {
  RealMatrix generator;  // rows/cols over {I, P_1..P_M}: L*(B_a) ≈ sum_b L_ab B_b
  double residual = 0.0; // largest Frobenius residual of the fit
  bool invariant = false;
};

/// Least-squares fit of L*(P_m) onto span{I, P_1..P_M}.
InvariantSubspace invariant_subspace_matrix(const GkslGenerator& gen, const RelevantSet& relevant,
                                            double tol = 1e-10);

/// lambda P L P rho + alpha/2 (P L^2 P rho - P L P L P rho) for a linear
/// family's projector P. Throws ContractError for non-linear families.
ComplexMatrix projector_ode_rhs(const GkslGenerator& gen, const AnsatzFamily& family,
                                const ComplexMatrix& rho, const StrobConfig& cfg);

}  // namespace strobotherm

#endif  // STROBOTHERM_STROB_HPP
