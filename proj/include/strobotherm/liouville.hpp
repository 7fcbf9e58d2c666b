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

// GKSL generators, their Schrödinger and Heisenberg actions, and the
// semigroups they generate.
//
// Units: hbar = 1. The Hamiltonian carries energy units, jump rates carry
// inverse time. Vectorization is column stacking, vec(A X B) = (B^T ⊗ A) vec(X).

#ifndef STROBOTHERM_LIOUVILLE_HPP
#define STROBOTHERM_LIOUVILLE_HPP

#include <vector>

#include "strobotherm/matcore.hpp"

namespace strobotherm {

/// Eigenvalue floor accepted for propagated states.
inline constexpr double kPositivityFloor = -1e-8;

/// A d x d complex Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  struct Unchecked {};

  /// Validates trace (1e-10), Hermiticity and min eigenvalue (>= -psd_tol).
  explicit DensityMatrix(ComplexMatrix m, double psd_tol = 1e-10);
  /// Skips validation; for states produced by routines that guarantee them.
  DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  static DensityMatrix maximally_mixed(Eigen::Index d);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double min_eigenvalue() const;

 private:
  ComplexMatrix m_;
};

struct JumpOperator {
  ComplexMatrix op;
  double rate = 0.0;
};

class GkslGenerator {
 public:
  GkslGenerator() = default;
  /// Validates Hermitian H, shared dimensions and non-negative finite rates.
  GkslGenerator(ComplexMatrix hamiltonian, std::vector<JumpOperator> jumps);

  /// Same as the constructor but accepts negative rates. Such generators do
  /// not produce CP semigroups; used to exercise the Choi diagnostic.
  static GkslGenerator unchecked(ComplexMatrix hamiltonian, std::vector<JumpOperator> jumps);

  static GkslGenerator zero(Eigen::Index d);

  Eigen::Index dim() const { return h_.rows(); }
  const ComplexMatrix& hamiltonian() const { return h_; }
  const std::vector<JumpOperator>& jumps() const { return jumps_; }

  /// Generator multiplied by a non-negative coupling (H and all rates).
  GkslGenerator scaled(double factor) const;

 private:
  struct NoCheck {};
  GkslGenerator(ComplexMatrix h, std::vector<JumpOperator> jumps, NoCheck)
      : h_(std::move(h)), jumps_(std::move(jumps)) {}

  ComplexMatrix h_;
  std::vector<JumpOperator> jumps_;
};

/// -i[H, rho] + sum_k rate_k (L rho L† - 1/2 {L†L, rho}).
ComplexMatrix apply_schrodinger(const GkslGenerator& gen, const ComplexMatrix& rho);

/// i[H, X] + sum_k rate_k (L† X L - 1/2 {L†L, X}).
ComplexMatrix apply_heisenberg(const GkslGenerator& gen, const ComplexMatrix& x);

/// d² x d² matrix of the Schrödinger action. Throws CapacityError if d² is
/// above kMaxGeneralExpDim.
ComplexMatrix to_liouvillian(const GkslGenerator& gen);

/// Cached channel exp(t L) for one (generator, t) pair.
class Propagator {
 public:
  Propagator(const GkslGenerator& gen, double t);

  Eigen::Index dim() const { return dim_; }
  double time() const { return t_; }
  const ComplexMatrix& superoperator() const { return superop_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  Eigen::Index dim_;
  double t_;
  ComplexMatrix superop_;
};

/// exp(t L) rho. Throws DomainError for t < 0 or if the result has an
/// eigenvalue below kPositivityFloor.
DensityMatrix propagate(const GkslGenerator& gen, const DensityMatrix& rho, double t);

/// Minimal eigenvalue of the Choi matrix sum_ij |i><j| ⊗ exp(tL)(|i><j|).
double choi_min_eigenvalue(const GkslGenerator& gen, double t);

}  // namespace strobotherm

#endif  // STROBOTHERM_LIOUVILLE_HPP
