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

#include "strobotherm/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "strobotherm/errors.hpp"

namespace strobotherm {

double matrix_scale(const ComplexMatrix& m) {
  return 1.0 + (m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff());
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return asym <= tol * matrix_scale(m);
}

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  require_square_finite(m, what);
  if (!is_hermitian(m)) {
    throw ValidationError(std::string(what) + ": matrix is not Hermitian");
  }
}

HermitianEigen herm_eig(const ComplexMatrix& m) {
  require_hermitian(m, "herm_eig");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("herm_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix exp_hermitian(const HermitianEigen& eig, double s) {
  const RealVector w = (s * eig.values).array().exp();
  return eig.vectors * w.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix exp_hermitian(const ComplexMatrix& m, double s) {
  return exp_hermitian(herm_eig(m), s);
}

namespace {

double norm1(const ComplexMatrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ComplexMatrix exp_general(const ComplexMatrix& x) {
  require_square_finite(x, "exp_general");
  if (x.rows() > kMaxGeneralExpDim) {
    throw CapacityError("exp_general: dimension " + std::to_string(x.rows()) +
                        " exceeds cap " + std::to_string(kMaxGeneralExpDim));
  }
  const Eigen::Index n = x.rows();
  const double nrm = norm1(x);
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const ComplexMatrix y = x / std::ldexp(1.0, squarings);

  // Taylor series of exp(y); ||y||_1 <= 1/2 so ~20 terms reach round-off.
  ComplexMatrix sum = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * y) / static_cast<double>(k);
    sum += term;
    if (norm1(term) <= 1e-18 * norm1(sum)) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

ComplexMatrix dexp_neg(const HermitianEigen& k_eig, const ComplexMatrix& d) {
  require_hermitian(d, "dexp_neg direction");
  const Eigen::Index n = k_eig.values.size();
  if (d.rows() != n) throw ValidationError("dexp_neg: dimension mismatch");
  const RealVector& k = k_eig.values;
  ComplexMatrix inner = k_eig.vectors.adjoint() * d * k_eig.vectors;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double gap = k(i) - k(j);
      double w;
      if (std::abs(gap) < kDegenerateGap) {
        w = -std::exp(-0.5 * (k(i) + k(j)));
      } else {
        w = (std::exp(-k(i)) - std::exp(-k(j))) / gap;
      }
      inner(i, j) *= w;
    }
  }
  return k_eig.vectors * inner * k_eig.vectors.adjoint();
}

ComplexMatrix dexp_neg(const ComplexMatrix& k, const ComplexMatrix& d) {
  return dexp_neg(herm_eig(k), d);
}

cplx frobenius(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("frobenius: dimension mismatch");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ValidationError("trace_product: dimension mismatch");
  }
  return (a.transpose().cwiseProduct(b)).sum();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_system,
                            std::size_t d_bath, Subsystem keep) {
  const auto ds = static_cast<Eigen::Index>(d_system);
  const auto db = static_cast<Eigen::Index>(d_bath);
  if (ds == 0 || db == 0 || m.rows() != ds * db || m.cols() != ds * db) {
    throw ValidationError("partial_trace: dims (" + std::to_string(d_system) + ", " +
                          std::to_string(d_bath) + ") do not factor a " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          " matrix");
  }
  if (keep == Subsystem::kSystem) {
    ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
    for (Eigen::Index s2 = 0; s2 < ds; ++s2)
      for (Eigen::Index s1 = 0; s1 < ds; ++s1)
        for (Eigen::Index b = 0; b < db; ++b) out(s1, s2) += m(s1 * db + b, s2 * db + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index b2 = 0; b2 < db; ++b2)
    for (Eigen::Index b1 = 0; b1 < db; ++b1)
      for (Eigen::Index s = 0; s < ds; ++s) out(b1, b2) += m(s * db + b1, s * db + b2);
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd vec(const ComplexMatrix& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

ComplexMatrix unvec(const Eigen::VectorXcd& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw ValidationError("unvec: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

namespace pauli {

ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix raising() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix lowering() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

}  // namespace pauli

}  // namespace strobotherm
