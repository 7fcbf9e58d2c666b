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

#include "strobotherm/errors.hpp"
#include "strobotherm/kernels.hpp"
#include "strobotherm/liouville.hpp"
#include "strobotherm/models.hpp"
#include "test_util.hpp"

namespace strobotherm {
namespace {

using testing::kSeed;
using testing::max_abs;

constexpr double kEeq = 0.268941421369995121;  // 1 / (1 + e)

QubitParams relaxing_qubit() {
  QubitParams p = testing::standard_qubit();
  p.Omega = 0.0;
  return p;
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix(diag2(0.3, 0.7)));
  EXPECT_THROW(DensityMatrix(diag2(0.3, 0.6)), ValidationError);
  EXPECT_THROW(DensityMatrix(diag2(1.2, -0.2)), ValidationError);
  EXPECT_THROW(DensityMatrix(pauli::raising() + diag2(0.5, 0.5)), ValidationError);
  EXPECT_NEAR(DensityMatrix::maximally_mixed(4).matrix().trace().real(), 1.0, 1e-15);
}

TEST(Schrodinger, Examples) {
  // Commutant of H is stationary under the coherent part.
  const GkslGenerator h_only(pauli::z(), {});
  EXPECT_LE(max_abs(apply_schrodinger(h_only, diag2(0.2, 0.8))), 0.0);

  EXPECT_LE(max_abs(apply_schrodinger(qubit_generator(relaxing_qubit()), diag2(kEeq, 1.0 - kEeq))),
            1e-12);

  const GkslGenerator dephasing(ComplexMatrix::Zero(2, 2), {{pauli::z(), 1.0}});
  const ComplexMatrix rho = 0.5 * pauli::x() + 0.5 * pauli::identity();
  EXPECT_LE(max_abs(apply_schrodinger(dephasing, rho) + pauli::x()), 1e-15);

  EXPECT_THROW(apply_schrodinger(dephasing, ComplexMatrix::Zero(3, 3)), ValidationError);
}

TEST(Schrodinger, TracelessBattery) {
  std::mt19937_64 rng(kSeed + 20);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    const GkslGenerator gen = testing::random_generator(rng, d, 1 + trial % 3);
    const ComplexMatrix rho = testing::random_complex(rng, d);
    EXPECT_LE(std::abs(apply_schrodinger(gen, rho).trace()), 1e-12);
  }
}

TEST(Heisenberg, DualityBattery) {
  std::mt19937_64 rng(kSeed + 21);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    const GkslGenerator gen = testing::random_generator(rng, d, 1 + trial % 3);
    const ComplexMatrix x = testing::random_hermitian(rng, d);
    const ComplexMatrix rho = testing::random_state(rng, d).matrix();
    const cplx lhs = trace_product(x, apply_schrodinger(gen, rho));
    const cplx rhs = trace_product(apply_heisenberg(gen, x), rho);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10);
    EXPECT_LE(max_abs(apply_heisenberg(gen, ComplexMatrix::Identity(d, d))), 1e-12);
  }
}

TEST(Heisenberg, QubitEnergyVelocity) {
  const QubitParams p = relaxing_qubit();
  const ComplexMatrix a = apply_heisenberg(qubit_generator(p), qubit_gibbs_hamiltonian(p));
  for (double e : {0.0, 0.1, 0.5, 0.9}) {
    const double v = trace_product(a, diag2(e, 1.0 - e)).real();
    EXPECT_NEAR(v, qubit_A_analytic(e, p), 1e-14);
  }
  EXPECT_NEAR(trace_product(a, diag2(0.0, 1.0)).real(), 0.183939720585721161, 1e-15);
  EXPECT_NEAR(trace_product(a, diag2(0.5, 0.5)).real(), -0.158030139707139420, 1e-15);
}

TEST(Liouvillian, Examples) {
  EXPECT_LE(max_abs(to_liouvillian(GkslGenerator::zero(3))), 0.0);

  std::mt19937_64 rng(kSeed + 22);
  const ComplexMatrix h = testing::random_hermitian(rng, 3);
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix expect = cplx(0.0, -1.0) * (kron(i3, h) - kron(h.transpose(), i3));
  EXPECT_LE(max_abs(to_liouvillian(GkslGenerator(h, {})) - expect), 1e-14);
}

TEST(Liouvillian, MatrixUnitBasis) {
  std::mt19937_64 rng(kSeed + 23);
  std::vector<GkslGenerator> gens = {qubit_generator(testing::standard_qubit()),
                                     multilevel_generator(testing::three_level())};
  for (int k = 0; k < 10; ++k) gens.push_back(testing::random_generator(rng, 2 + k % 4, 2));
  for (const auto& gen : gens) {
    const ComplexMatrix lv = to_liouvillian(gen);
    const Eigen::Index d = gen.dim();
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        ComplexMatrix unit = ComplexMatrix::Zero(d, d);
        unit(i, j) = 1.0;
        EXPECT_LE(max_abs(unvec(lv * vec(unit), d) - apply_schrodinger(gen, unit)), 1e-12);
      }
    }
  }
}

TEST(Liouvillian, Capacity) {
  EXPECT_NO_THROW(to_liouvillian(GkslGenerator::zero(16)));
  EXPECT_THROW(to_liouvillian(GkslGenerator::zero(17)), CapacityError);
}

TEST(Propagate, Examples) {
  const GkslGenerator gen = qubit_generator(relaxing_qubit());
  const DensityMatrix half(diag2(0.5, 0.5));
  EXPECT_LE(max_abs(propagate(gen, half, 0.0).matrix() - half.matrix()), 1e-15);

  const DensityMatrix out = propagate(gen, half, 0.1);
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.484725288901906932, 1e-13);
  EXPECT_NEAR(out.matrix()(1, 1).real(), 1.0 - 0.484725288901906932, 1e-13);

  const DensityMatrix gibbs(diag2(kEeq, 1.0 - kEeq));
  for (double t : {0.1, 1.0, 10.0}) {
    EXPECT_LE(max_abs(propagate(gen, gibbs, t).matrix() - gibbs.matrix()), 1e-12);
  }
  EXPECT_THROW(propagate(gen, half, -1.0), DomainError);
}

TEST(Propagate, TracePositivityAndSemigroup) {
  std::mt19937_64 rng(kSeed + 24);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 4;
    const GkslGenerator gen = testing::random_generator(rng, d, 1 + trial % 3);
    const DensityMatrix rho = testing::random_state(rng, d);
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
      const DensityMatrix out = propagate(gen, rho, t);
      EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-10);
      EXPECT_GE(out.min_eigenvalue(), -1e-8);
    }
    if (trial % 5 == 0) {
      const double s = 0.3, t = 0.7;
      const DensityMatrix two = propagate(gen, propagate(gen, rho, s), t);
      EXPECT_LE(max_abs(two.matrix() - propagate(gen, rho, s + t).matrix()), 1e-9);
    }
  }
}

TEST(Choi, Diagnostics) {
  const GkslGenerator gen = qubit_generator(testing::standard_qubit());
  EXPECT_NEAR(choi_min_eigenvalue(gen, 0.0), 0.0, 1e-14);
  EXPECT_GE(choi_min_eigenvalue(gen, 1.0), -1e-8);

  const GkslGenerator bad = GkslGenerator::unchecked(
      ComplexMatrix::Zero(2, 2), {{pauli::lowering(), -0.5}, {pauli::z(), 0.1}});
  double worst = 0.0;
  for (double t : {0.1, 0.5, 1.0}) worst = std::min(worst, choi_min_eigenvalue(bad, t));
  EXPECT_LT(worst, -1e-6);
  EXPECT_THROW(GkslGenerator(ComplexMatrix::Zero(2, 2), {{pauli::lowering(), -0.5}}),
               ValidationError);
}

TEST(Choi, PositivityBattery) {
  std::mt19937_64 rng(kSeed + 25);
  for (int trial = 0; trial < 100; ++trial) {
    const GkslGenerator gen = testing::random_generator(rng, 2 + trial % 4, 1 + trial % 3);
    EXPECT_GE(choi_min_eigenvalue(gen, 0.05 + 0.5 * (trial % 7)), -1e-8);
  }
}

TEST(Generator, ScaledMultipliesEverything) {
  const GkslGenerator gen = qubit_generator(testing::standard_qubit());
  const GkslGenerator twice = gen.scaled(2.0);
  EXPECT_LE(max_abs(to_liouvillian(twice) - 2.0 * to_liouvillian(gen)), 1e-14);
  EXPECT_THROW(gen.scaled(-1.0), ValidationError);
}

}  // namespace
}  // namespace strobotherm
