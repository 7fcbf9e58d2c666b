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

#include "strobotherm/liouville.hpp"

#include <cmath>
#include <string>

#include "strobotherm/errors.hpp"
#include "strobotherm/kernels.hpp"

namespace strobotherm {

DensityMatrix::DensityMatrix(ComplexMatrix m, double psd_tol) : m_(std::move(m)) {
  require_hermitian(m_, "DensityMatrix");
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  if (min_eigenvalue() < -psd_tol) {
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(min_eigenvalue()));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), Unchecked{});
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd u = psi.normalized();
  return DensityMatrix(u * u.adjoint(), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const { return herm_eig(m_).values(0); }

GkslGenerator::GkslGenerator(ComplexMatrix hamiltonian, std::vector<JumpOperator> jumps)
    : h_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  require_hermitian(h_, "GKSL Hamiltonian");
  for (const auto& jump : jumps_) {
    require_square_finite(jump.op, "GKSL jump operator");
    if (jump.op.rows() != h_.rows()) {
      throw ValidationError("GKSL jump operator dimension differs from the Hamiltonian");
    }
    if (!std::isfinite(jump.rate) || jump.rate < 0.0) {
      throw ValidationError("GKSL rate must be finite and non-negative, got " +
                            std::to_string(jump.rate));
    }
  }
}

GkslGenerator GkslGenerator::unchecked(ComplexMatrix hamiltonian,
                                       std::vector<JumpOperator> jumps) {
  return GkslGenerator(std::move(hamiltonian), std::move(jumps), NoCheck{});
}

GkslGenerator GkslGenerator::zero(Eigen::Index d) {
  return GkslGenerator(ComplexMatrix::Zero(d, d), {});
}

GkslGenerator GkslGenerator::scaled(double factor) const {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw ValidationError("GKSL coupling factor must be finite and non-negative");
  }
  std::vector<JumpOperator> jumps = jumps_;
  for (auto& jump : jumps) jump.rate *= factor;
  return GkslGenerator(factor * h_, std::move(jumps), NoCheck{});
}

namespace {

void require_dim(const GkslGenerator& gen, const ComplexMatrix& m, const char* what) {
  if (m.rows() != gen.dim() || m.cols() != gen.dim()) {
    throw ValidationError(std::string(what) + ": dimension mismatch with generator");
  }
}

}  // namespace

ComplexMatrix apply_schrodinger(const GkslGenerator& gen, const ComplexMatrix& rho) {
  require_dim(gen, rho, "apply_schrodinger");
  const cplx i_unit(0.0, 1.0);
  const ComplexMatrix& h = gen.hamiltonian();
  ComplexMatrix out = -i_unit * (h * rho - rho * h);
  for (const auto& jump : gen.jumps()) {
    const ComplexMatrix n = jump.op.adjoint() * jump.op;
    out += jump.rate *
           (jump.op * rho * jump.op.adjoint() - 0.5 * (n * rho + rho * n));
  }
  return out;
}

ComplexMatrix apply_heisenberg(const GkslGenerator& gen, const ComplexMatrix& x) {
  require_dim(gen, x, "apply_heisenberg");
  const cplx i_unit(0.0, 1.0);
  const ComplexMatrix& h = gen.hamiltonian();
  ComplexMatrix out = i_unit * (h * x - x * h);
  for (const auto& jump : gen.jumps()) {
    const ComplexMatrix n = jump.op.adjoint() * jump.op;
    out += jump.rate * (jump.op.adjoint() * x * jump.op - 0.5 * (n * x + x * n));
  }
  return out;
}

ComplexMatrix to_liouvillian(const GkslGenerator& gen) {
  const Eigen::Index d2 = gen.dim() * gen.dim();
  if (d2 > kMaxGeneralExpDim) {
    throw CapacityError("to_liouvillian: d^2 = " + std::to_string(d2) + " exceeds cap " +
                        std::to_string(kMaxGeneralExpDim));
  }
  return kernels::liouvillian_omp(gen);
}

Propagator::Propagator(const GkslGenerator& gen, double t) : dim_(gen.dim()), t_(t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("propagation time must be finite and non-negative");
  }
  const ComplexMatrix lv = to_liouvillian(gen);
  superop_ = exp_general(t * lv);
}

ComplexMatrix Propagator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw ValidationError("Propagator::apply: dimension mismatch");
  }
  return unvec(superop_ * vec(rho), dim_);
}

DensityMatrix propagate(const GkslGenerator& gen, const DensityMatrix& rho, double t) {
  if (rho.dim() != gen.dim()) throw ValidationError("propagate: dimension mismatch");
  const Propagator prop(gen, t);
  ComplexMatrix out = prop.apply(rho.matrix());
  out = 0.5 * (out + out.adjoint());
  DensityMatrix result(std::move(out), DensityMatrix::Unchecked{});
  const double floor = result.min_eigenvalue();
  if (floor < kPositivityFloor) {
    throw DomainError("propagate: state lost positivity (min eigenvalue " +
                      std::to_string(floor) + ")");
  }
  return result;
}

double choi_min_eigenvalue(const GkslGenerator& gen, double t) {
  const Propagator prop(gen, t);
  ComplexMatrix choi = kernels::choi_omp(prop.superoperator(), gen.dim());
  choi = 0.5 * (choi + choi.adjoint());
  return herm_eig(choi).values(0);
}

}  // namespace strobotherm
