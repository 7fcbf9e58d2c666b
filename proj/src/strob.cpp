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

#include "strobotherm/strob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "strobotherm/errors.hpp"

namespace strobotherm {

StrobConfig StrobConfig::make(double lambda, double dt, double horizon,
                              std::optional<double> ode_step) {
  StrobConfig cfg;
  cfg.lambda = lambda;
  cfg.dt = dt;
  cfg.alpha = lambda * lambda * dt;
  cfg.horizon = horizon;
  cfg.ode_step = ode_step ? *ode_step : std::min(dt / 10.0, 1e-2);
  cfg.validate();
  return cfg;
}

void StrobConfig::validate() const {
  if (!(std::isfinite(lambda) && lambda >= 0.0)) throw ValidationError("lambda must be finite and >= 0");
  if (!(std::isfinite(dt) && dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(std::isfinite(ode_step) && ode_step > 0.0)) throw ValidationError("ODE step must be positive");
  if (!(std::isfinite(horizon) && horizon > 0.0)) throw ValidationError("horizon must be positive");
  const double expected = lambda * lambda * dt;
  if (std::abs(alpha - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
    throw ValidationError("alpha must equal lambda^2 * dt");
  }
}

void Trajectory::validate() const {
  if (params.size() != times.size() || (temps && temps->size() != times.size())) {
    throw ValidationError("trajectory columns have different lengths");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ValidationError("trajectory times must strictly increase");
  }
}

// ---------------------------------------------------------------------------
// Discrete protocol
// ---------------------------------------------------------------------------

DiscreteProtocol::DiscreteProtocol(const GkslGenerator& gen, const AnsatzFamily& family,
                                   const StrobConfig& cfg)
    : family_(family), propagator_((cfg.validate(), gen.scaled(cfg.lambda)), cfg.dt) {
  if (gen.dim() != family.dim()) throw ValidationError("generator and ansatz dimensions differ");
}

RealVector DiscreteProtocol::step(const RealVector& e, long long index) const {
  try {
    const DensityMatrix rho = family_.state_of(e);
    const ComplexMatrix evolved = propagator_.apply(rho.matrix());
    RealVector next = family_.parameters_of(evolved);
    family_.check_feasible(next);
    return next;
  } catch (const DomainError& err) {
    throw DomainError("step " + std::to_string(index) + ": " + err.what());
  }
}

RealVector discrete_step(const GkslGenerator& gen, const AnsatzFamily& family,
                         const RealVector& e, const StrobConfig& cfg) {
  return DiscreteProtocol(gen, family, cfg).step(e, 0);
}

Trajectory run_discrete(const GkslGenerator& gen, const AnsatzFamily& family,
                        const RealVector& e0, const StrobConfig& cfg) {
  cfg.validate();
  const double ratio = cfg.horizon / cfg.dt;
  if (ratio > static_cast<double>(kMaxProtocolSteps)) {
    throw CapacityError("run_discrete: T/dt exceeds the step cap of 1e7");
  }
  const auto steps = std::max<long long>(1, std::llround(ratio));
  const DiscreteProtocol protocol(gen, family, cfg);
  family.check_feasible(e0);

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.params.reserve(static_cast<std::size_t>(steps) + 1);
  traj.times.push_back(0.0);
  traj.params.push_back(e0);
  RealVector e = e0;
  for (long long n = 1; n <= steps; ++n) {
    e = protocol.step(e, n);
    traj.times.push_back(static_cast<double>(n) * cfg.dt);
    traj.params.push_back(e);
  }
  traj.meta = "discrete";
  return traj;
}

// ---------------------------------------------------------------------------
// Stroboscopic right-hand sides
// ---------------------------------------------------------------------------

StrobDynamics::StrobDynamics(const GkslGenerator& gen, const AnsatzFamily& family,
                             const StrobConfig& cfg)
    : family_(family), cfg_(cfg) {
  cfg_.validate();
  if (gen.dim() != family.dim()) throw ValidationError("generator and ansatz dimensions differ");
  for (const auto& p : family.relevant().observables()) {
    ComplexMatrix a = apply_heisenberg(gen, p);
    ComplexMatrix b = apply_heisenberg(gen, a);
    a_ops_.push_back(std::move(a));
    b_ops_.push_back(std::move(b));
  }
}

namespace {

RealVector expect_all(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho) {
  RealVector out(static_cast<Eigen::Index>(ops.size()));
  for (std::size_t m = 0; m < ops.size(); ++m)
    out(static_cast<Eigen::Index>(m)) = trace_product(ops[m], rho).real();
  return out;
}

constexpr double kFiniteDifferenceStep = 1e-5;

}  // namespace

RealVector StrobDynamics::velocity(const RealVector& e) const {
  return expect_all(a_ops_, family_.state_of(e).matrix());
}

RealVector StrobDynamics::curvature(const RealVector& e) const {
  return expect_all(b_ops_, family_.state_of(e).matrix());
}

RealMatrix StrobDynamics::velocity_jacobian(const RealVector& e, DerivativeMode mode) const {
  const auto m = static_cast<Eigen::Index>(a_ops_.size());
  RealMatrix jac(m, m);
  if (mode == DerivativeMode::kAnalytic) {
    const std::vector<ComplexMatrix> drho = family_.derivative_of(e);
    for (Eigen::Index j = 0; j < m; ++j)
      jac.col(j) = expect_all(a_ops_, drho[static_cast<std::size_t>(j)]);
    return jac;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    RealVector up = e;
    RealVector down = e;
    up(j) += kFiniteDifferenceStep;
    down(j) -= kFiniteDifferenceStep;
    jac.col(j) = (velocity(up) - velocity(down)) / (2.0 * kFiniteDifferenceStep);
  }
  return jac;
}

RealVector StrobDynamics::bracket(const RealVector& e, DerivativeMode mode) const {
  const RealVector a = velocity(e);
  return curvature(e) - velocity_jacobian(e, mode) * a;
}

RealVector StrobDynamics::rhs_first_order(const RealVector& e) const {
  return cfg_.lambda * velocity(e);
}

RealVector StrobDynamics::rhs_second_order(const RealVector& e, DerivativeMode mode) const {
  if (mode == DerivativeMode::kAnalytic) {
    return rhs_second_order_at(family_.state_of(e).matrix(), family_.derivative_of(e));
  }
  return cfg_.lambda * velocity(e) + 0.5 * cfg_.alpha * bracket(e, mode);
}

RealVector StrobDynamics::rhs_second_order_at(const ComplexMatrix& rho,
                                              const std::vector<ComplexMatrix>& drho_de) const {
  const RealVector a = expect_all(a_ops_, rho);
  const RealVector b = expect_all(b_ops_, rho);
  RealVector directional = RealVector::Zero(a.size());
  for (std::size_t j = 0; j < drho_de.size(); ++j)
    directional += a(static_cast<Eigen::Index>(j)) * expect_all(a_ops_, drho_de[j]);
  return cfg_.lambda * a + 0.5 * cfg_.alpha * (b - directional);
}

RealVector relevant_velocity(const GkslGenerator& gen, const AnsatzFamily& family,
                             const RealVector& e) {
  return StrobDynamics(gen, family, StrobConfig{}).velocity(e);
}

RealVector relevant_curvature(const GkslGenerator& gen, const AnsatzFamily& family,
                              const RealVector& e) {
  return StrobDynamics(gen, family, StrobConfig{}).curvature(e);
}

RealVector ode_rhs_first_order(const GkslGenerator& gen, const AnsatzFamily& family,
                               const RealVector& e, const StrobConfig& cfg) {
  return StrobDynamics(gen, family, cfg).rhs_first_order(e);
}

RealVector ode_rhs_second_order(const GkslGenerator& gen, const AnsatzFamily& family,
                                const RealVector& e, const StrobConfig& cfg,
                                DerivativeMode mode) {
  return StrobDynamics(gen, family, cfg).rhs_second_order(e, mode);
}

// ---------------------------------------------------------------------------
// Temperature form
// ---------------------------------------------------------------------------

namespace {

void require_canonical(const GibbsAnsatz& gibbs) {
  if (gibbs.size() != 1) {
    throw ContractError("canonical Gibbs family with a single observable required");
  }
}

double energy_slope(const GibbsAnsatz& gibbs, double beta) {
  return gibbs_jacobian(gibbs.relevant(), RealVector::Constant(1, beta))(0, 0);
}

}  // namespace

double heat_capacity(const GibbsAnsatz& gibbs, double beta) {
  require_canonical(gibbs);
  if (beta == 0.0) throw DomainError("heat capacity is defined through 1/beta; beta = 0");
  if (!std::isfinite(beta)) throw DomainError("heat capacity: beta is not finite");
  return -beta * beta * energy_slope(gibbs, beta);
}

TemperatureDynamics::TemperatureDynamics(const GkslGenerator& gen, const GibbsAnsatz& gibbs,
                                         const StrobConfig& cfg)
    : gibbs_(gibbs), dynamics_(gen, gibbs, cfg) {
  require_canonical(gibbs);
}

double TemperatureDynamics::energy(double beta) const {
  return gibbs_expectations(gibbs_.relevant(), RealVector::Constant(1, beta))(0);
}

double TemperatureDynamics::rhs(double beta) const {
  if (!std::isfinite(beta)) throw DomainError("temperature equation: beta is not finite");
  const RealVector b = RealVector::Constant(1, beta);
  const double slope = energy_slope(gibbs_, beta);
  const double width = gibbs_.relevant().upper_bounds()(0) - gibbs_.relevant().lower_bounds()(0);
  if (!(std::abs(slope) > 1e-14 * width * width)) {
    throw SingularityError("temperature equation: heat capacity vanishes at beta = " +
                           std::to_string(beta));
  }
  const ComplexMatrix rho = gibbs_state(gibbs_.relevant(), b).matrix();
  std::vector<ComplexMatrix> drho = gibbs_state_derivatives(gibbs_.relevant(), b);
  drho[0] /= slope;
  return dynamics_.rhs_second_order_at(rho, drho)(0) / slope;
}

double ode_rhs_temperature(const GkslGenerator& gen, const GibbsAnsatz& gibbs, double beta,
                           const StrobConfig& cfg) {
  return TemperatureDynamics(gen, gibbs, cfg).rhs(beta);
}

// ---------------------------------------------------------------------------
// RK4
// ---------------------------------------------------------------------------

Trajectory integrate(const OdeRhs& rhs, const RealVector& x0, double horizon, double step,
                     int record_every) {
  if (!(horizon > 0.0) || !(step > 0.0) || !std::isfinite(horizon) || !std::isfinite(step)) {
    throw ValidationError("integrate: horizon and step must be positive");
  }
  if (record_every < 1) throw ValidationError("integrate: record_every must be >= 1");
  const double ratio = horizon / step;
  long long steps = std::llround(ratio);
  if (std::abs(static_cast<double>(steps) - ratio) > 1e-9 * ratio) {
    steps = static_cast<long long>(std::ceil(ratio));
  }
  steps = std::max<long long>(steps, 1);
  const double h = horizon / static_cast<double>(steps);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.params.push_back(x0);
  RealVector x = x0;
  double t = 0.0;
  for (long long n = 1; n <= steps; ++n) {
    try {
      const RealVector k1 = rhs(t, x);
      const RealVector k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
      const RealVector k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
      const RealVector k4 = rhs(t + h, x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const DomainError& err) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "t = " << t << ": " << err.what();
      throw DomainError(msg.str());
    }
    t = static_cast<double>(n) * h;
    if (n % record_every == 0 || n == steps) {
      traj.times.push_back(t);
      traj.params.push_back(x);
    }
  }
  return traj;
}

Trajectory integrate(const OdeRhs& rhs, const RealVector& x0, const StrobConfig& cfg) {
  cfg.validate();
  return integrate(rhs, x0, cfg.horizon, cfg.ode_step);
}

// ---------------------------------------------------------------------------
// Invariant subspaces and the projector form
// ---------------------------------------------------------------------------

InvariantSubspace invariant_subspace_matrix(const GkslGenerator& gen, const RelevantSet& relevant,
                                            double tol) {
  if (gen.dim() != relevant.dim()) throw ValidationError("generator and observables differ in dimension");
  std::vector<ComplexMatrix> basis;
  basis.push_back(ComplexMatrix::Identity(gen.dim(), gen.dim()));
  basis.insert(basis.end(), relevant.observables().begin(), relevant.observables().end());
  const auto n = static_cast<Eigen::Index>(basis.size());

  RealMatrix gram(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) gram(a, b) = trace_product(basis[a], basis[b]).real();
  const Eigen::LDLT<RealMatrix> solver(gram);

  InvariantSubspace out;
  out.generator.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const ComplexMatrix image = apply_heisenberg(gen, basis[static_cast<std::size_t>(a)]);
    RealVector rhs(n);
    for (Eigen::Index b = 0; b < n; ++b) rhs(b) = trace_product(basis[b], image).real();
    const RealVector coeff = solver.solve(rhs);
    ComplexMatrix fitted = ComplexMatrix::Zero(gen.dim(), gen.dim());
    for (Eigen::Index b = 0; b < n; ++b) fitted += coeff(b) * basis[static_cast<std::size_t>(b)];
    out.generator.row(a) = coeff.transpose();
    out.residual = std::max(out.residual, (image - fitted).norm());
  }
  out.invariant = out.residual <= tol;
  return out;
}

ComplexMatrix projector_ode_rhs(const GkslGenerator& gen, const AnsatzFamily& family,
                                const ComplexMatrix& rho, const StrobConfig& cfg) {
  if (!family.is_linear()) throw ContractError("projector form requires a linear ansatz family");
  cfg.validate();
  const ComplexMatrix p_rho = family.project(rho);
  const ComplexMatrix l_p_rho = apply_schrodinger(gen, p_rho);
  const ComplexMatrix plp = family.project(l_p_rho);
  const ComplexMatrix pl2p = family.project(apply_schrodinger(gen, l_p_rho));
  const ComplexMatrix plplp = family.project(apply_schrodinger(gen, plp));
  return cfg.lambda * plp + 0.5 * cfg.alpha * (pl2p - plplp);
}

}  // namespace strobotherm
