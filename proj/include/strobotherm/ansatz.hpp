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

// Ansatz families parameterized by expectations of relevant observables.
//
// A family maps a parameter vector E (one entry per relevant observable P_m,
// the identity being implicit) to a density matrix rho(E) with
// Tr(P_m rho(E)) = E_m. The posterior of a state rho is rho(Tr(P rho)).

#ifndef STROBOTHERM_ANSATZ_HPP
#define STROBOTHERM_ANSATZ_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "strobotherm/liouville.hpp"
#include "strobotherm/matcore.hpp"

namespace strobotherm {

/// Hermitian observables P_1..P_M, linearly independent together with I.
class RelevantSet {
 public:
  explicit RelevantSet(std::vector<ComplexMatrix> observables);

  std::size_t size() const { return observables_.size(); }
  Eigen::Index dim() const { return dim_; }
  const ComplexMatrix& operator[](std::size_t m) const { return observables_[m]; }
  const std::vector<ComplexMatrix>& observables() const { return observables_; }

  /// Condition number of the Frobenius Gram matrix of {I, P_1..P_M}.
  double gram_condition() const { return gram_condition_; }

  /// Re Tr(P_m rho) for every m.
  RealVector expectations(const ComplexMatrix& rho) const;

  /// Spectral bounds of each observable; the open box they span contains
  /// every achievable expectation vector.
  const RealVector& lower_bounds() const { return lower_; }
  const RealVector& upper_bounds() const { return upper_; }

 private:
  std::vector<ComplexMatrix> observables_;
  Eigen::Index dim_ = 0;
  double gram_condition_ = 1.0;
  RealVector lower_;
  RealVector upper_;
};

class AnsatzFamily {
 public:
  virtual ~AnsatzFamily() = default;

  const RelevantSet& relevant() const { return relevant_; }
  Eigen::Index dim() const { return relevant_.dim(); }
  std::size_t size() const { return relevant_.size(); }

  /// Throws DomainError when e lies outside the family's feasible domain.
  virtual void check_feasible(const RealVector& e) const = 0;

  /// rho(e). Calls check_feasible first.
  virtual DensityMatrix state_of(const RealVector& e) const = 0;

  /// d rho / d e_j for every j.
  virtual std::vector<ComplexMatrix> derivative_of(const RealVector& e) const = 0;

  virtual bool is_linear() const = 0;

  /// The projector P on all of C^{d x d} whose image parameterizes the family.
  /// Only linear families have one; the default throws ContractError.
  virtual ComplexMatrix project(const ComplexMatrix& x) const;

  RealVector parameters_of(const ComplexMatrix& rho) const {
    return relevant_.expectations(rho);
  }

 protected:
  explicit AnsatzFamily(RelevantSet relevant) : relevant_(std::move(relevant)) {}

 private:
  RelevantSet relevant_;
};

/// Coordinates of block-diagonal Hermitian matrices.
///
/// Each block is an orthonormal set of columns. Per block, the upper triangle
/// is walked row by row: the diagonal entry, then real and imaginary parts of
/// each entry to its right. `observables` read a coordinate off a matrix,
/// `duals` rebuild the matrix: X = offset * Tr(X) + sum_m Tr(P_m X) Q_m.
struct BlockChart {
  std::vector<ComplexMatrix> observables;
  std::vector<ComplexMatrix> duals;
  ComplexMatrix offset;  // zero when no diagonal was dropped
};

/// With drop_last_diagonal the final diagonal coordinate is replaced by the
/// trace (the implicit identity observable).
BlockChart build_block_chart(const std::vector<ComplexMatrix>& blocks,
                             bool drop_last_diagonal);

/// Orthonormal bases of the eigenspaces of a Hermitian matrix, in ascending
/// eigenvalue order. Eigenvalues closer than 1e-9 * scale share a block.
struct Eigenspace {
  double value;
  ComplexMatrix basis;
};
std::vector<Eigenspace> eigenspaces(const ComplexMatrix& x);

/// rho(E) = offset + sum_m E_m Q_m with fixed duals; projector form available.
class LinearAnsatz final : public AnsatzFamily {
 public:
  LinearAnsatz(RelevantSet relevant, std::vector<ComplexMatrix> duals, ComplexMatrix offset);

  void check_feasible(const RealVector& e) const override;
  DensityMatrix state_of(const RealVector& e) const override;
  std::vector<ComplexMatrix> derivative_of(const RealVector& e) const override;
  bool is_linear() const override { return true; }
  ComplexMatrix project(const ComplexMatrix& x) const override;

 private:
  ComplexMatrix affine(const RealVector& e) const;

  std::vector<ComplexMatrix> duals_;
  ComplexMatrix offset_;
};

/// Non-selective measurement of X: rho -> sum_x Pi_x rho Pi_x.
LinearAnsatz pinching_ansatz(const ComplexMatrix& x);

/// rho -> Tr_B(rho) ⊗ rho_B on C^{dS x dS} ⊗ C^{dB x dB}.
LinearAnsatz factorized_ansatz(const DensityMatrix& rho_bath, std::size_t d_system,
                               std::size_t d_bath);

/// Selective measurement of X with outcome x: sigma -> sigma / Tr(sigma) ⊕ 0,
/// parameterized by the entries of the x-block sigma. Consistent on the slice
/// Tr(sigma) = 1.
class SelectiveAnsatz final : public AnsatzFamily {
 public:
  SelectiveAnsatz(const ComplexMatrix& x, double outcome);

  void check_feasible(const RealVector& e) const override;
  DensityMatrix state_of(const RealVector& e) const override;
  std::vector<ComplexMatrix> derivative_of(const RealVector& e) const override;
  bool is_linear() const override { return false; }

  /// Projector onto the outcome eigenspace.
  const ComplexMatrix& block_projector() const { return projector_; }

 private:
  struct Parts;
  explicit SelectiveAnsatz(Parts&& parts);
  static Parts make_parts(const ComplexMatrix& x, double outcome);

  ComplexMatrix block(const RealVector& e) const;

  std::vector<ComplexMatrix> duals_;
  ComplexMatrix offset_;
  ComplexMatrix projector_;
};

SelectiveAnsatz selective_ansatz(const ComplexMatrix& x, double outcome);

struct FitOptions {
  double tol = 1e-10;
  int max_iterations = 200;
  int max_halvings = 60;
};

struct FitResult {
  RealVector beta;
  double residual = 0.0;
  int iterations = 0;
};

/// exp(-(beta, P)) / Z, with the exponent shifted by its smallest eigenvalue.
DensityMatrix gibbs_state(const RelevantSet& relevant, const RealVector& beta);

/// Tr(P_m rho_Gibbs(beta)).
RealVector gibbs_expectations(const RelevantSet& relevant, const RealVector& beta);

/// d rho_Gibbs / d beta_n for every n.
std::vector<ComplexMatrix> gibbs_state_derivatives(const RelevantSet& relevant,
                                                   const RealVector& beta);

/// J_mn = d E_m / d beta_n. Symmetric negative definite.
RealMatrix gibbs_jacobian(const RelevantSet& relevant, const RealVector& beta);

/// Solves gibbs_expectations(beta) = target by damped Newton from beta_init
/// (zero by default). Single-observable sets fall back to bisection when
/// Newton stalls. Throws DomainError for targets on or beyond the spectral
/// bounds and FitError if the residual stagnates above tol.
FitResult fit_beta(const RelevantSet& relevant, const RealVector& target,
                   const std::optional<RealVector>& beta_init = std::nullopt,
                   const FitOptions& options = {});

/// Inverse temperature of the two-level Gibbs state with mean energy E,
/// H = omega0 |e><e|. Throws DomainError unless 0 < E < omega0.
double qubit_beta_closed_form(double energy, double omega0);

/// Generalized Gibbs family rho(E) = rho_Gibbs(beta(E)).
class GibbsAnsatz final : public AnsatzFamily {
 public:
  explicit GibbsAnsatz(RelevantSet relevant, FitOptions options = {});

  /// Domain error "E on feasible-domain boundary" within 1e-9 of a spectral
  /// bound, "E outside feasible domain" beyond it.
  void check_feasible(const RealVector& e) const override;
  DensityMatrix state_of(const RealVector& e) const override;
  /// Chain rule through beta(E): sum_n (d rho / d beta_n) (J^-1)_nj.
  /// Throws SingularityError for a singular Jacobian.
  std::vector<ComplexMatrix> derivative_of(const RealVector& e) const override;
  bool is_linear() const override { return false; }

  FitResult beta_of(const RealVector& e) const;
  const FitOptions& options() const { return options_; }

 private:
  FitOptions options_;
};

/// rho(e) at e = Tr(P rho).
DensityMatrix posterior(const AnsatzFamily& family, const DensityMatrix& rho);

std::vector<ComplexMatrix> ansatz_derivative(const AnsatzFamily& family, const RealVector& e);

}  // namespace strobotherm

#endif  // STROBOTHERM_ANSATZ_HPP
