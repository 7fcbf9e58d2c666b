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

// Dense complex matrix primitives.
//
// Matrices are plain Eigen::MatrixXcd values. Functions that need Hermitian
// input validate it against a scale-relative tolerance and throw
// ValidationError otherwise.

#ifndef STROBOTHERM_MATCORE_HPP
#define STROBOTHERM_MATCORE_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace strobotherm {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Largest matrix handed to exp_general (d² for a d-level Liouvillian).
inline constexpr Eigen::Index kMaxGeneralExpDim = 256;

/// Relative Hermiticity tolerance: max|M - M†| <= kHermTol * (1 + max|M|).
inline constexpr double kHermTol = 1e-12;

/// Below this eigenvalue gap dexp_neg switches to the midpoint-limit kernel.
inline constexpr double kDegenerateGap = 1e-8;

/// 1 + largest entry magnitude; the reference scale for relative tolerances.
double matrix_scale(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermTol);

/// Throws ValidationError unless m is square, finite and Hermitian.
void require_hermitian(const ComplexMatrix& m, const char* what);

/// Throws ValidationError unless m is square with finite entries.
void require_square_finite(const ComplexMatrix& m, const char* what);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

HermitianEigen herm_eig(const ComplexMatrix& m);

/// exp(s * M) for Hermitian M, through the spectral decomposition.
ComplexMatrix exp_hermitian(const ComplexMatrix& m, double s);
ComplexMatrix exp_hermitian(const HermitianEigen& eig, double s);

/// exp(X) for an arbitrary square matrix by scaling, truncated Taylor series
/// and repeated squaring. Throws CapacityError above kMaxGeneralExpDim.
ComplexMatrix exp_general(const ComplexMatrix& x);

/// Fréchet derivative of K -> exp(-K) at Hermitian K in Hermitian direction D,
/// via the Daleckii-Krein divided-difference kernel in the eigenbasis of K.
ComplexMatrix dexp_neg(const ComplexMatrix& k, const ComplexMatrix& d);
ComplexMatrix dexp_neg(const HermitianEigen& k_eig, const ComplexMatrix& d);

/// Tr(A† B).
cplx frobenius(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(A B) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kSystem, kBath };

/// Partial trace over one factor of C^{dS x dS} ⊗ C^{dB x dB}.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_system,
                            std::size_t d_bath, Subsystem keep);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization and its inverse.
Eigen::VectorXcd vec(const ComplexMatrix& m);
ComplexMatrix unvec(const Eigen::VectorXcd& v, Eigen::Index dim);

/// Frequently used constant matrices.
namespace pauli {
ComplexMatrix identity(Eigen::Index d = 2);
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// Raising operator |e><g| in the (excited, ground) ordering.
ComplexMatrix raising();
/// Lowering operator |g><e| in the (excited, ground) ordering.
ComplexMatrix lowering();
}  // namespace pauli

}  // namespace strobotherm

#endif  // STROBOTHERM_MATCORE_HPP
