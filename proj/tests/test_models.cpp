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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "strobotherm/ansatz.hpp"
#include "strobotherm/errors.hpp"
#include "strobotherm/models.hpp"
#include "strobotherm/strob.hpp"
#include "test_util.hpp"

namespace strobotherm {
namespace {

using testing::max_abs;
using testing::standard_qubit;
using testing::three_level;

constexpr double kEeq = 0.268941421369995121;

// Resonance-fluorescence generator written out entry by entry in the
// (excited, ground) basis.
ComplexMatrix qubit_rhs_by_hand(const QubitParams& p, const ComplexMatrix& rho) {
  const cplx a = rho(0, 0), b = rho(0, 1), c = rho(1, 0), d = rho(1, 1);
  const cplx i(0.0, 1.0);
  const double w = p.omega0 + p.delta_omega, om = p.Omega;
  const double down = p.gamma, up = p.gamma * std::exp(-p.beta0 * p.omega0);
  ComplexMatrix out(2, 2);
  out(0, 0) = -i * om * (b - c) - down * a + up * d;
  out(0, 1) = -i * (w * b + om * (a - d)) - 0.5 * (down + up) * b;
  out(1, 0) = -i * (-w * c - om * (a - d)) - 0.5 * (down + up) * c;
  out(1, 1) = -i * om * (c - b) + down * a - up * d;
  return out;
}

TEST(QubitModel, GeneratorMatchesHandEvaluation) {
  QubitParams p = standard_qubit();
  p.delta_omega = 0.13;
  const GkslGenerator gen = qubit_generator(p);
  for (Eigen::Index r = 0; r < 2; ++r) {
    for (Eigen::Index s = 0; s < 2; ++s) {
      ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
      unit(r, s) = 1.0;
      EXPECT_LE(max_abs(apply_schrodinger(gen, unit) - qubit_rhs_by_hand(p, unit)), 1e-12);
    }
  }
}

TEST(QubitModel, Examples) {
  QubitParams p = standard_qubit();
  p.Omega = 0.0;
  ComplexMatrix gibbs = ComplexMatrix::Zero(2, 2);
  gibbs(0, 0) = kEeq;
  gibbs(1, 1) = 1.0 - kEeq;
  EXPECT_LE(max_abs(apply_schrodinger(qubit_generator(p), gibbs)), 1e-12);

  const ComplexMatrix half = pauli::identity() / 2.0;
  const ComplexMatrix h = qubit_gibbs_hamiltonian(p);
  EXPECT_NEAR(trace_product(h, apply_schrodinger(qubit_generator(p), half)).real(),
              -0.158030139707139420, 1e-15);

  p.beta0 = 50.0;
  const GkslGenerator cold = qubit_generator(p);
  EXPECT_LT(cold.jumps()[1].rate, 1e-20);
  EXPECT_EQ(cold.jumps()[0].rate, p.gamma);

  QubitParams bad = standard_qubit();
  bad.gamma = 0.0;
  EXPECT_THROW(qubit_generator(bad), ValidationError);
  bad = standard_qubit();
  bad.dt = -0.1;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(QubitModel, BosonicGamma) {
  EXPECT_NEAR(bosonic_gamma(1.0, 1.0, 1.0), 1.58197670686932642, 1e-15);
  EXPECT_NEAR(bosonic_gamma(0.7, 50.0, 1.0), 0.7, 1e-20);
  EXPECT_GT(bosonic_gamma(0.7, 2.0, 1.5), 0.7);
  EXPECT_GT(bosonic_gamma(1.0, 1e-6, 1.0), 1e5);
  EXPECT_THROW(bosonic_gamma(1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(bosonic_gamma(1.0, -1.0, 1.0), DomainError);
}

TEST(QubitModel, AnalyticVelocityCurvature) {
  const QubitParams p = standard_qubit();
  EXPECT_NEAR(qubit_A_analytic(kEeq, p), 0.0, 1e-16);
  EXPECT_NEAR(qubit_B_analytic(kEeq, p), 0.0369693725808007807, 1e-15);
  EXPECT_NEAR(qubit_A_analytic(0.0, p), 0.183939720585721161, 1e-16);
  QubitParams undriven = p;
  undriven.Omega = 0.0;
  EXPECT_NEAR(qubit_B_analytic(0.3, p) - qubit_B_analytic(0.3, undriven),
              2.0 * 0.04 * (1.0 - 0.6), 1e-15);
}

TEST(QubitModel, ClosedForms) {
  const QubitParams p = standard_qubit();
  EXPECT_NEAR(qubit_E_stationary(p), 0.274223215143588109, 1e-15);
  EXPECT_NEAR(qubit_beta_stationary(p), 0.973300080127680136, 1e-14);
  EXPECT_NEAR(qubit_tau(p), 1.42869445837876356, 1e-14);
  EXPECT_NEAR(qubit_E_stationary(p, kExpansionDriveCoefficient), 0.27161285151636008, 1e-15);
  EXPECT_NEAR(qubit_beta_stationary(p, kExpansionDriveCoefficient), 0.98645499183820422, 1e-14);
  EXPECT_NEAR(qubit_tau(p, kExpansionDriveCoefficient), 1.44521259619769826, 1e-14);

  EXPECT_EQ(qubit_E_closed_form(0.0, 0.5, p), 0.5);
  EXPECT_NEAR(qubit_E_closed_form(500.0, 0.5, p), qubit_E_stationary(p), 1e-15);
  QubitParams relax = p;
  relax.Omega = 0.0;
  EXPECT_NEAR(qubit_E_closed_form(0.1, 0.5, relax), 0.484725288901906932, 1e-15);
  EXPECT_THROW(qubit_E_closed_form(-1.0, 0.5, p), DomainError);

  // The closed form solves the closed-form right-hand side.
  for (double t : {0.3, 1.0, 4.0}) {
    const double h = 1e-5;
    const double dedt = (qubit_E_closed_form(t + h, 0.5, p) - qubit_E_closed_form(t - h, 0.5, p)) / (2 * h);
    EXPECT_NEAR(dedt, qubit_rhs_closed_form(qubit_E_closed_form(t, 0.5, p), p), 1e-9);
  }
  EXPECT_NEAR(qubit_rhs_closed_form(qubit_E_stationary(p), p), 0.0, 1e-16);
}

TEST(QubitModel, StationaryTemperatureProperties) {
  for (double c : {kPrintedDriveCoefficient, kExpansionDriveCoefficient}) {
    for (double w : {0.5, 1.0, 2.0}) {
      for (double b0 : {0.5, 1.0, 2.0}) {
        for (double g : {0.1, 0.5}) {
          for (double om : {0.0, 0.2, 0.5}) {
            for (double dt : {0.05, 0.1}) {
              QubitParams p{w, 0.0, om, g, b0, dt};
              const double bst = qubit_beta_stationary(p, c);
              EXPECT_NEAR(bst, qubit_beta_closed_form(qubit_E_stationary(p, c), w), 1e-10);
              if (om == 0.0) {
                EXPECT_NEAR(bst, b0, 1e-12);
                EXPECT_NEAR(qubit_E_stationary(p, c), w / (1.0 + std::exp(b0 * w)), 1e-12);
              } else {
                EXPECT_LT(bst, b0);
              }
            }
          }
        }
      }
    }
  }
  QubitParams p = standard_qubit();
  double last_tau = qubit_tau(p);
  for (double om = 0.25; om < 2.0; om += 0.25) {
    p.Omega = om;
    EXPECT_LT(qubit_tau(p), last_tau);
    last_tau = qubit_tau(p);
  }
  p = standard_qubit();
  p.dt = 1e-12;
  EXPECT_NEAR(qubit_beta_stationary(p), p.beta0, 1e-10);
}

TEST(QubitModel, GenericPipelineMatchesAnalyticGrid) {
  for (double w : {0.5, 1.0, 2.0}) {
    for (double b0 : {0.5, 1.0, 2.0}) {
      for (double g : {0.1, 0.5}) {
        for (double om : {0.0, 0.2, 0.5}) {
          for (double dt : {0.05, 0.1}) {
            const QubitParams p{w, 0.0, om, g, b0, dt};
            const GibbsAnsatz fam(RelevantSet({qubit_gibbs_hamiltonian(p)}));
            const StrobDynamics dyn(qubit_generator(p), fam, StrobConfig::make(1.0, dt, 1.0));
            for (int k = 1; k <= 19; ++k) {
              const double e = 0.05 * k * w;
              const RealVector ev = RealVector::Constant(1, e);
              EXPECT_NEAR(dyn.velocity(ev)(0), qubit_A_analytic(e, p), 1e-10);
              EXPECT_NEAR(dyn.curvature(ev)(0), qubit_B_analytic(e, p), 1e-10);
              EXPECT_NEAR(dyn.rhs_second_order(ev)(0),
                          qubit_rhs_closed_form(e, p, kExpansionDriveCoefficient), 1e-10);
            }
          }
        }
      }
    }
  }
}

TEST(QubitModel, LambShiftInvisibleToDiagonalAnsatz) {
  QubitParams p = standard_qubit();
  const GibbsAnsatz fam(RelevantSet({qubit_gibbs_hamiltonian(p)}));
  const StrobConfig cfg = StrobConfig::make(1.0, p.dt, 1.0);
  const StrobDynamics plain(qubit_generator(p), fam, cfg);
  p.delta_omega = 0.37;
  const StrobDynamics shifted(qubit_generator(p), fam, cfg);
  for (double e : {0.1, 0.3, 0.6}) {
    const RealVector ev = RealVector::Constant(1, e);
    EXPECT_NEAR(plain.rhs_second_order(ev)(0), shifted.rhs_second_order(ev)(0), 1e-13);
  }
}

// Hand-assembled 3-level rates: downward 1, upward e^{-beta0 gap}.
RealMatrix three_level_rates(double beta0) {
  RealMatrix g = RealMatrix::Zero(3, 3);
  const double w[3] = {0.0, 1.0, 2.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i < j) g(i, j) = 1.0;
      if (i > j) g(i, j) = std::exp(-beta0 * (w[i] - w[j]));
    }
  }
  return g;
}

TEST(MultilevelModel, RatesAndStationarity) {
  const MultilevelParams p = three_level();
  EXPECT_LE((p.rates() - three_level_rates(1.0)).cwiseAbs().maxCoeff(), 1e-15);
  const GkslGenerator gen = multilevel_generator(p);
  const ComplexMatrix gibbs = gibbs_state(RelevantSet({multilevel_gibbs_hamiltonian(p)}),
                                          RealVector::Constant(1, p.beta0)).matrix();
  EXPECT_LE(max_abs(apply_schrodinger(gen, gibbs)), 1e-10);

  MultilevelParams shifted = p;
  shifted.lamb = RealVector::Constant(3, 0.2);
  EXPECT_LE(max_abs(apply_schrodinger(multilevel_generator(shifted), gibbs)), 1e-10);

  const MultilevelParams cold = three_level(50.0);
  ComplexMatrix ground = ComplexMatrix::Zero(3, 3);
  ground(0, 0) = 1.0;
  EXPECT_LE(max_abs(apply_schrodinger(multilevel_generator(cold), ground)), 1e-20);
}

TEST(MultilevelModel, Validation) {
  MultilevelParams p = three_level();
  p.base_rates(1, 0) = 0.3;
  EXPECT_THROW(multilevel_generator(p), ValidationError);
  p = three_level();
  p.base_rates(0, 2) = -1.0;
  EXPECT_THROW(multilevel_generator(p), ValidationError);
  p = three_level();
  p.omegas(2) = 0.5;
  EXPECT_THROW(multilevel_generator(p), ValidationError);
  p = three_level();
  p.lamb = RealVector::Zero(2);
  EXPECT_THROW(multilevel_generator(p), ValidationError);
}

TEST(MultilevelModel, EmbeddedTwoLevelRelaxation) {
  MultilevelParams p = three_level();
  p.base_rates.setZero();
  p.base_rates(0, 1) = 0.5;
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  rho(0, 0) = rho(1, 1) = 0.5;
  const ComplexMatrix h = multilevel_gibbs_hamiltonian(p);
  QubitParams q = standard_qubit();
  q.Omega = 0.0;
  for (double t : {0.1, 1.0, 3.0}) {
    const DensityMatrix out = propagate(multilevel_generator(p), DensityMatrix(rho), t);
    EXPECT_NEAR(trace_product(h, out.matrix()).real(), qubit_E_closed_form(t, 0.5, q), 1e-12);
  }
}

TEST(MultilevelModel, AnalyticFormsAgainstBruteForce) {
  const MultilevelParams p = three_level();
  EXPECT_NEAR(multilevel_A_analytic(p.beta0, p), 0.0, 1e-12);
  EXPECT_NEAR(multilevel_B_analytic(p.beta0, p), 0.0, 1e-12);

  // Direct master-equation sums at beta = 0 (uniform populations).
  const RealMatrix g = three_level_rates(1.0);
  const double w[3] = {0.0, 1.0, 2.0};
  double a = 0.0, b = 0.0;
  double a_level[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) a_level[i] += g(k, i) * (w[k] - w[i]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      a += (g(i, j) - g(j, i)) / 3.0 * w[i];
      b += (g(i, j) - g(j, i)) / 3.0 * a_level[i];
    }
  }
  EXPECT_NEAR(multilevel_A_analytic(0.0, p), a, 1e-14);
  EXPECT_NEAR(multilevel_B_analytic(0.0, p), b, 1e-14);

  MultilevelParams frozen = p;
  frozen.base_rates.setZero();
  EXPECT_EQ(multilevel_A_analytic(0.3, frozen), 0.0);
  EXPECT_EQ(multilevel_B_analytic(0.3, frozen), 0.0);
}

TEST(MultilevelModel, GenericPipelineMatchesAnalytic) {
  std::mt19937_64 rng(testing::kSeed + 40);
  std::uniform_real_distribution<double> rate(0.1, 2.0);
  for (int trial = 0; trial < 12; ++trial) {
    MultilevelParams p;
    const Eigen::Index d = 3 + trial % 3;
    p.omegas = RealVector::LinSpaced(d, 0.0, 1.0) + RealVector::LinSpaced(d, 0.0, 0.3 * trial);
    p.base_rates = RealMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i + 1; j < d; ++j) p.base_rates(i, j) = rate(rng);
    p.beta0 = 0.5 + 0.25 * trial;
    const RelevantSet rs({multilevel_gibbs_hamiltonian(p)});
    const GibbsAnsatz fam(rs);
    const StrobDynamics dyn(multilevel_generator(p), fam, StrobConfig::make(1.0, 0.1, 1.0));
    for (double beta : {-0.5, 0.0, 0.4, p.beta0, 2.0}) {
      const RealVector e = gibbs_expectations(rs, RealVector::Constant(1, beta));
      EXPECT_NEAR(dyn.velocity(e)(0), multilevel_A_analytic(beta, p), 1e-10);
      EXPECT_NEAR(dyn.curvature(e)(0), multilevel_B_analytic(beta, p), 1e-10);
    }
  }
}

TEST(MultilevelModel, TemperatureFixedPointAttracts) {
  for (double b0 : {0.5, 1.0, 2.0}) {
    const MultilevelParams p = three_level(b0);
    const GibbsAnsatz fam(RelevantSet({multilevel_gibbs_hamiltonian(p)}));
    for (double dt : {0.05, 0.1}) {
      const TemperatureDynamics temp(multilevel_generator(p), fam, StrobConfig::make(1.0, dt, 1.0));
      EXPECT_NEAR(temp.rhs(b0), 0.0, 1e-10);
      const double h = 1e-4;
      EXPECT_LT((temp.rhs(b0 + h) - temp.rhs(b0 - h)) / (2 * h), 0.0);
    }
  }
}

}  // namespace
}  // namespace strobotherm
