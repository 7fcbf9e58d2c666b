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

#include "strobotherm/models.hpp"

#include <cmath>
#include <string>

#include "strobotherm/errors.hpp"

namespace strobotherm {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace

void QubitParams::validate() const {
  require_finite(omega0, "omega0");
  require_finite(delta_omega, "delta_omega");
  require_finite(Omega, "Omega");
  require_finite(gamma, "gamma");
  require_finite(beta0, "beta0");
  require_finite(dt, "dt");
  if (omega0 <= 0.0) throw ValidationError("omega0 must be positive");
  if (gamma <= 0.0) throw ValidationError("gamma must be positive");
  if (dt <= 0.0) throw ValidationError("dt must be positive");
}

GkslGenerator qubit_generator(const QubitParams& p) {
  p.validate();
  const ComplexMatrix up = pauli::raising();
  const ComplexMatrix down = pauli::lowering();
  const ComplexMatrix h = (p.omega0 + p.delta_omega) * (up * down) - p.Omega * (up + down);
  return GkslGenerator(h, {{down, p.gamma}, {up, p.gamma * std::exp(-p.beta0 * p.omega0)}});
}

ComplexMatrix qubit_gibbs_hamiltonian(const QubitParams& p) {
  p.validate();
  return p.omega0 * (pauli::raising() * pauli::lowering());
}

LinearAnsatz qubit_energy_ansatz(const QubitParams& p) {
  const ComplexMatrix excited = pauli::raising() * pauli::lowering();
  const ComplexMatrix ground = pauli::lowering() * pauli::raising();
  return LinearAnsatz(RelevantSet({qubit_gibbs_hamiltonian(p)}), {(excited - ground) / p.omega0},
                      ground);
}

double bosonic_gamma(double gamma0, double beta0, double omega0) {
  const double x = beta0 * omega0;
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("bosonic_gamma requires beta0 * omega0 > 0");
  }
  return gamma0 / (-std::expm1(-x));
}

double qubit_A_analytic(double e, const QubitParams& p) {
  const double x = std::exp(-p.beta0 * p.omega0);
  return -p.gamma * (1.0 + x) * e + p.gamma * p.omega0 * x;
}

double qubit_B_analytic(double e, const QubitParams& p) {
  const double bw = p.beta0 * p.omega0;
  const double eb = std::exp(bw);
  return p.gamma * p.gamma * std::exp(-2.0 * bw) * (eb + 1.0) * (e * eb + e - p.omega0) +
         2.0 * p.Omega * p.Omega * (p.omega0 - 2.0 * e);
}

double qubit_rhs_closed_form(double e, const QubitParams& p, double drive) {
  return qubit_A_analytic(e, p) + drive * p.Omega * p.Omega * p.dt * (p.omega0 - 2.0 * e);
}

double qubit_tau(const QubitParams& p, double drive) {
  p.validate();
  const double x = std::exp(-p.beta0 * p.omega0);
  return 1.0 / (p.gamma * (1.0 + x) + 2.0 * drive * p.Omega * p.Omega * p.dt);
}

double qubit_E_stationary(const QubitParams& p, double drive) {
  const double x = std::exp(-p.beta0 * p.omega0);
  const double kick = drive * p.Omega * p.Omega * p.dt;
  return (p.gamma * p.omega0 * x + kick * p.omega0) * qubit_tau(p, drive);
}

double qubit_E_closed_form(double t, double e0, const QubitParams& p, double drive) {
  if (!(t >= 0.0)) throw DomainError("qubit_E_closed_form requires t >= 0");
  const double e_st = qubit_E_stationary(p, drive);
  return std::exp(-t / qubit_tau(p, drive)) * (e0 - e_st) + e_st;
}

double qubit_beta_stationary(const QubitParams& p, double drive) {
  p.validate();
  const double r = drive * p.Omega * p.Omega * p.dt / p.gamma;
  return p.beta0 - std::log((1.0 + r * std::exp(p.beta0 * p.omega0)) / (1.0 + r)) / p.omega0;
}

void MultilevelParams::validate() const {
  const Eigen::Index d = omegas.size();
  if (d < 2) throw ValidationError("multilevel model needs at least two levels");
  if (lamb.size() != 0 && lamb.size() != d) {
    throw ValidationError("lamb shifts must match the number of levels");
  }
  if (base_rates.rows() != d || base_rates.cols() != d) {
    throw ValidationError("base_rates must be d x d");
  }
  require_finite(beta0, "beta0");
  for (Eigen::Index i = 0; i < d; ++i) {
    require_finite(omegas(i), "omegas");
    if (lamb.size() != 0) require_finite(lamb(i), "lamb");
    if (i > 0 && !(omegas(i) > omegas(i - 1))) {
      throw ValidationError("omegas must be strictly ascending");
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double g = base_rates(i, j);
      if (!std::isfinite(g) || g < 0.0) {
        throw ValidationError("base rates must be finite and non-negative");
      }
      if (j <= i && g != 0.0) {
        throw ValidationError("base_rates(i, j) is a downward rate; only i < j may be nonzero");
      }
    }
  }
}

RealMatrix MultilevelParams::rates() const {
  validate();
  const Eigen::Index d = dim();
  RealMatrix g = RealMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      g(i, j) = base_rates(i, j);
      g(j, i) = base_rates(i, j) * std::exp(-beta0 * (omegas(j) - omegas(i)));
    }
  }
  return g;
}

GkslGenerator multilevel_generator(const MultilevelParams& p) {
  const RealMatrix g = p.rates();
  const Eigen::Index d = p.dim();
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) h(j, j) = p.omegas(j) + (p.lamb.size() ? p.lamb(j) : 0.0);
  std::vector<JumpOperator> jumps;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j || g(i, j) == 0.0) continue;
      ComplexMatrix op = ComplexMatrix::Zero(d, d);
      op(i, j) = 1.0;
      jumps.push_back({op, g(i, j)});
    }
  }
  return GkslGenerator(h, std::move(jumps));
}

ComplexMatrix multilevel_gibbs_hamiltonian(const MultilevelParams& p) {
  p.validate();
  return p.omegas.cast<cplx>().asDiagonal();
}

namespace {

// Gibbs weights exp(-beta omega_j) shifted by the ground level, and their sum.
RealVector gibbs_weights(double beta, const MultilevelParams& p, double& z) {
  const RealVector w = (-beta * (p.omegas.array() - p.omegas(0))).exp();
  z = w.sum();
  return w;
}

// gamma_ij p_j (1 - e^{-(beta - beta0)(omega_i - omega_j)}), the net flow j -> i.
RealMatrix net_flows(double beta, const MultilevelParams& p) {
  if (!std::isfinite(beta)) throw DomainError("multilevel closed forms require finite beta");
  const RealMatrix g = p.rates();
  double z = 0.0;
  const RealVector w = gibbs_weights(beta, p, z);
  const Eigen::Index d = p.dim();
  RealMatrix flow = RealMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      flow(i, j) = g(i, j) * w(j) / z *
                   -std::expm1(-(beta - p.beta0) * (p.omegas(i) - p.omegas(j)));
  return flow;
}

}  // namespace

double multilevel_A_analytic(double beta, const MultilevelParams& p) {
  const RealMatrix flow = net_flows(beta, p);
  double a = 0.0;
  for (Eigen::Index i = 0; i < p.dim(); ++i)
    for (Eigen::Index j = 0; j < p.dim(); ++j) a += p.omegas(i) * flow(i, j);
  return a;
}

double multilevel_B_analytic(double beta, const MultilevelParams& p) {
  const RealMatrix flow = net_flows(beta, p);
  const RealMatrix g = p.rates();
  double b = 0.0;
  for (Eigen::Index i = 0; i < p.dim(); ++i)
    for (Eigen::Index k = 0; k < p.dim(); ++k)
      for (Eigen::Index j = 0; j < p.dim(); ++j)
        b += flow(i, j) * g(k, i) * (p.omegas(k) - p.omegas(i));
  return b;
}

}  // namespace strobotherm
