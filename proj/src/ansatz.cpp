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

#include "strobotherm/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "strobotherm/errors.hpp"

namespace strobotherm {

// ---------------------------------------------------------------------------
// RelevantSet
// ---------------------------------------------------------------------------

RelevantSet::RelevantSet(std::vector<ComplexMatrix> observables)
    : observables_(std::move(observables)) {
  if (observables_.empty()) throw ValidationError("RelevantSet: no observables");
  dim_ = observables_.front().rows();
  const auto m = static_cast<Eigen::Index>(observables_.size());
  lower_.resize(m);
  upper_.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const ComplexMatrix& p = observables_[static_cast<std::size_t>(i)];
    require_hermitian(p, "relevant observable");
    if (p.rows() != dim_) throw ValidationError("RelevantSet: observables differ in dimension");
    const ComplexMatrix traceless =
        p - (p.trace() / static_cast<double>(dim_)) * ComplexMatrix::Identity(dim_, dim_);
    if (traceless.cwiseAbs().maxCoeff() <= 1e-12 * matrix_scale(p)) {
      throw ValidationError("RelevantSet: observable " + std::to_string(i + 1) +
                            " is a multiple of the identity");
    }
    const HermitianEigen eig = herm_eig(p);
    lower_(i) = eig.values(0);
    upper_(i) = eig.values(dim_ - 1);
  }

  std::vector<ComplexMatrix> basis;
  basis.reserve(observables_.size() + 1);
  basis.push_back(ComplexMatrix::Identity(dim_, dim_));
  basis.insert(basis.end(), observables_.begin(), observables_.end());
  const auto n = static_cast<Eigen::Index>(basis.size());
  RealMatrix gram(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      gram(a, b) = trace_product(basis[a], basis[b]).real();
  const RealVector ev = Eigen::SelfAdjointEigenSolver<RealMatrix>(gram).eigenvalues();
  if (ev(0) <= 1e-12 * ev(n - 1)) {
    throw ValidationError("RelevantSet: observables are linearly dependent together with I");
  }
  gram_condition_ = ev(n - 1) / ev(0);
}

RealVector RelevantSet::expectations(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw ValidationError("RelevantSet::expectations: dimension mismatch");
  }
  RealVector e(static_cast<Eigen::Index>(size()));
  for (std::size_t m = 0; m < size(); ++m)
    e(static_cast<Eigen::Index>(m)) = trace_product(observables_[m], rho).real();
  return e;
}

ComplexMatrix AnsatzFamily::project(const ComplexMatrix&) const {
  throw ContractError("ansatz family is not linear: no projector form");
}

// ---------------------------------------------------------------------------
// Block coordinates
// ---------------------------------------------------------------------------

BlockChart build_block_chart(const std::vector<ComplexMatrix>& blocks, bool drop_last_diagonal) {
  if (blocks.empty()) throw ValidationError("build_block_chart: no blocks");
  const Eigen::Index d = blocks.front().rows();
  const cplx i_unit(0.0, 1.0);
  BlockChart chart;
  chart.offset = ComplexMatrix::Zero(d, d);

  // The dropped coordinate is the last diagonal entry of the last block.
  Eigen::VectorXcd last;
  if (drop_last_diagonal) {
    const ComplexMatrix& b = blocks.back();
    last = b.col(b.cols() - 1);
    chart.offset = last * last.adjoint();
  }

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const ComplexMatrix& b = blocks[bi];
    if (b.rows() != d) throw ValidationError("build_block_chart: block dimension mismatch");
    const bool is_last_block = bi + 1 == blocks.size();
    for (Eigen::Index a = 0; a < b.cols(); ++a) {
      const Eigen::VectorXcd va = b.col(a);
      const bool dropped = drop_last_diagonal && is_last_block && a == b.cols() - 1;
      if (!dropped) {
        const ComplexMatrix proj = va * va.adjoint();
        chart.observables.push_back(proj);
        chart.duals.push_back(drop_last_diagonal ? ComplexMatrix(proj - chart.offset) : proj);
      }
      for (Eigen::Index c = a + 1; c < b.cols(); ++c) {
        const Eigen::VectorXcd vc = b.col(c);
        const ComplexMatrix ac = va * vc.adjoint();
        const ComplexMatrix ca = vc * va.adjoint();
        chart.observables.push_back(0.5 * (ac + ca));
        chart.duals.push_back(ac + ca);
        chart.observables.push_back(0.5 * i_unit * (ac - ca));
        chart.duals.push_back(i_unit * (ac - ca));
      }
    }
  }
  return chart;
}

std::vector<Eigenspace> eigenspaces(const ComplexMatrix& x) {
  const HermitianEigen eig = herm_eig(x);
  const double tol = 1e-9 * matrix_scale(x);
  std::vector<Eigenspace> spaces;
  Eigen::Index start = 0;
  const Eigen::Index n = eig.values.size();
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || eig.values(i) - eig.values(i - 1) > tol) {
      const Eigen::Index len = i - start;
      spaces.push_back({eig.values.segment(start, len).mean(), eig.vectors.middleCols(start, len)});
      start = i;
    }
  }
  return spaces;
}

// ---------------------------------------------------------------------------
// Linear families
// ---------------------------------------------------------------------------

LinearAnsatz::LinearAnsatz(RelevantSet relevant, std::vector<ComplexMatrix> duals,
                           ComplexMatrix offset)
    : AnsatzFamily(std::move(relevant)), duals_(std::move(duals)), offset_(std::move(offset)) {
  if (duals_.size() != size()) throw ValidationError("LinearAnsatz: dual count mismatch");
}

namespace {

void require_parameter_shape(const AnsatzFamily& family, const RealVector& e) {
  if (e.size() != static_cast<Eigen::Index>(family.size())) {
    throw ValidationError("ansatz parameter vector has length " + std::to_string(e.size()) +
                          ", expected " + std::to_string(family.size()));
  }
  if (!e.allFinite()) throw DomainError("ansatz parameters are not finite");
}

double min_eigenvalue(const ComplexMatrix& m) {
  return herm_eig(0.5 * (m + m.adjoint())).values(0);
}

}  // namespace

ComplexMatrix LinearAnsatz::affine(const RealVector& e) const {
  ComplexMatrix rho = offset_;
  for (std::size_t m = 0; m < duals_.size(); ++m) rho += e(static_cast<Eigen::Index>(m)) * duals_[m];
  return 0.5 * (rho + rho.adjoint());
}

void LinearAnsatz::check_feasible(const RealVector& e) const {
  require_parameter_shape(*this, e);
  const double floor = min_eigenvalue(affine(e));
  if (floor < -1e-9) {
    throw DomainError("E outside feasible domain: ansatz state has eigenvalue " +
                      std::to_string(floor));
  }
}

DensityMatrix LinearAnsatz::state_of(const RealVector& e) const {
  check_feasible(e);
  return DensityMatrix(affine(e), DensityMatrix::Unchecked{});
}

std::vector<ComplexMatrix> LinearAnsatz::derivative_of(const RealVector& e) const {
  require_parameter_shape(*this, e);
  return duals_;
}

ComplexMatrix LinearAnsatz::project(const ComplexMatrix& x) const {
  if (x.rows() != dim() || x.cols() != dim()) {
    throw ValidationError("LinearAnsatz::project: dimension mismatch");
  }
  ComplexMatrix out = x.trace() * offset_;
  for (std::size_t m = 0; m < duals_.size(); ++m)
    out += trace_product(relevant()[m], x) * duals_[m];
  return out;
}

LinearAnsatz pinching_ansatz(const ComplexMatrix& x) {
  require_hermitian(x, "pinching observable");
  if (x.rows() < 2) throw ValidationError("pinching_ansatz: dimension must be at least 2");
  std::vector<ComplexMatrix> blocks;
  for (const auto& space : eigenspaces(x)) blocks.push_back(space.basis);
  BlockChart chart = build_block_chart(blocks, /*drop_last_diagonal=*/true);
  return LinearAnsatz(RelevantSet(std::move(chart.observables)), std::move(chart.duals),
                      std::move(chart.offset));
}

LinearAnsatz factorized_ansatz(const DensityMatrix& rho_bath, std::size_t d_system,
                               std::size_t d_bath) {
  if (rho_bath.dim() != static_cast<Eigen::Index>(d_bath)) {
    throw ValidationError("factorized_ansatz: bath state dimension mismatch");
  }
  if (d_system < 2) throw ValidationError("factorized_ansatz: system dimension must be at least 2");
  const auto ds = static_cast<Eigen::Index>(d_system);
  const auto db = static_cast<Eigen::Index>(d_bath);
  const BlockChart chart = build_block_chart({ComplexMatrix::Identity(ds, ds)}, true);
  const ComplexMatrix id_bath = ComplexMatrix::Identity(db, db);
  std::vector<ComplexMatrix> observables;
  std::vector<ComplexMatrix> duals;
  for (std::size_t m = 0; m < chart.observables.size(); ++m) {
    observables.push_back(kron(chart.observables[m], id_bath));
    duals.push_back(kron(chart.duals[m], rho_bath.matrix()));
  }
  return LinearAnsatz(RelevantSet(std::move(observables)), std::move(duals),
                      kron(chart.offset, rho_bath.matrix()));
}

// ---------------------------------------------------------------------------
// Selective measurement
// ---------------------------------------------------------------------------

struct SelectiveAnsatz::Parts {
  BlockChart chart;
  ComplexMatrix projector;
};

SelectiveAnsatz::Parts SelectiveAnsatz::make_parts(const ComplexMatrix& x, double outcome) {
  require_hermitian(x, "selective observable");
  const double tol = 1e-9 * matrix_scale(x);
  for (const auto& space : eigenspaces(x)) {
    if (std::abs(space.value - outcome) <= tol) {
      const bool whole_space = space.basis.cols() == x.rows();
      return {build_block_chart({space.basis}, whole_space), space.basis * space.basis.adjoint()};
    }
  }
  std::ostringstream msg;
  msg << "selective_ansatz: outcome " << outcome << " is not an eigenvalue";
  throw ValidationError(msg.str());
}

SelectiveAnsatz::SelectiveAnsatz(const ComplexMatrix& x, double outcome)
    : SelectiveAnsatz(make_parts(x, outcome)) {}

SelectiveAnsatz::SelectiveAnsatz(Parts&& parts)
    : AnsatzFamily(RelevantSet(std::move(parts.chart.observables))),
      duals_(std::move(parts.chart.duals)),
      offset_(std::move(parts.chart.offset)),
      projector_(std::move(parts.projector)) {}

ComplexMatrix SelectiveAnsatz::block(const RealVector& e) const {
  ComplexMatrix sigma = offset_;
  for (std::size_t m = 0; m < duals_.size(); ++m) sigma += e(static_cast<Eigen::Index>(m)) * duals_[m];
  return 0.5 * (sigma + sigma.adjoint());
}

void SelectiveAnsatz::check_feasible(const RealVector& e) const {
  require_parameter_shape(*this, e);
  const ComplexMatrix sigma = block(e);
  const double weight = sigma.trace().real();
  if (weight < 1e-12) {
    throw DomainError("zero-probability branch: outcome block has weight " +
                      std::to_string(weight));
  }
  const double floor = min_eigenvalue(sigma / weight);
  if (floor < -1e-9) {
    throw DomainError("E outside feasible domain: outcome block has eigenvalue " +
                      std::to_string(floor));
  }
}

DensityMatrix SelectiveAnsatz::state_of(const RealVector& e) const {
  check_feasible(e);
  const ComplexMatrix sigma = block(e);
  return DensityMatrix(sigma / sigma.trace().real(), DensityMatrix::Unchecked{});
}

std::vector<ComplexMatrix> SelectiveAnsatz::derivative_of(const RealVector& e) const {
  check_feasible(e);
  const ComplexMatrix sigma = block(e);
  const double weight = sigma.trace().real();
  const ComplexMatrix rho = sigma / weight;
  std::vector<ComplexMatrix> out;
  out.reserve(duals_.size());
  for (const auto& q : duals_) out.push_back((q - q.trace().real() * rho) / weight);
  return out;
}

SelectiveAnsatz selective_ansatz(const ComplexMatrix& x, double outcome) {
  return SelectiveAnsatz(x, outcome);
}

// ---------------------------------------------------------------------------
// Gibbs states
// ---------------------------------------------------------------------------

namespace {

struct GibbsEval {
  HermitianEigen shifted;  // spectrum of (beta, P) minus its minimum
  double z = 0.0;          // Tr exp(-shifted)
  ComplexMatrix rho;
};

GibbsEval evaluate_gibbs(const RelevantSet& relevant, const RealVector& beta) {
  if (beta.size() != static_cast<Eigen::Index>(relevant.size())) {
    throw ValidationError("Gibbs: beta has length " + std::to_string(beta.size()) +
                          ", expected " + std::to_string(relevant.size()));
  }
  if (!beta.allFinite()) throw DomainError("Gibbs: beta is not finite");
  const Eigen::Index d = relevant.dim();
  ComplexMatrix k = ComplexMatrix::Zero(d, d);
  for (std::size_t m = 0; m < relevant.size(); ++m) k += beta(static_cast<Eigen::Index>(m)) * relevant[m];
  GibbsEval out;
  out.shifted = herm_eig(0.5 * (k + k.adjoint()));
  out.shifted.values.array() -= out.shifted.values(0);
  const RealVector w = (-out.shifted.values).array().exp();
  out.z = w.sum();
  out.rho = out.shifted.vectors * (w / out.z).cast<cplx>().asDiagonal() *
            out.shifted.vectors.adjoint();
  return out;
}

RealVector expectations_of(const RelevantSet& relevant, const GibbsEval& g) {
  return relevant.expectations(g.rho);
}

/// d rho / d beta_n = D_n / Z + rho E_n with D_n the derivative of exp(-K).
std::vector<ComplexMatrix> rho_beta_derivatives(const RelevantSet& relevant, const GibbsEval& g,
                                                const RealVector& e) {
  std::vector<ComplexMatrix> out;
  out.reserve(relevant.size());
  for (std::size_t n = 0; n < relevant.size(); ++n) {
    out.push_back(dexp_neg(g.shifted, relevant[n]) / g.z +
                  e(static_cast<Eigen::Index>(n)) * g.rho);
  }
  return out;
}

RealMatrix jacobian_from(const RelevantSet& relevant, const std::vector<ComplexMatrix>& drho) {
  const auto m = static_cast<Eigen::Index>(relevant.size());
  RealMatrix j(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      j(a, b) = trace_product(relevant[static_cast<std::size_t>(a)],
                              drho[static_cast<std::size_t>(b)]).real();
  return j;
}

}  // namespace

DensityMatrix gibbs_state(const RelevantSet& relevant, const RealVector& beta) {
  GibbsEval g = evaluate_gibbs(relevant, beta);
  return DensityMatrix(std::move(g.rho), DensityMatrix::Unchecked{});
}

RealVector gibbs_expectations(const RelevantSet& relevant, const RealVector& beta) {
  return expectations_of(relevant, evaluate_gibbs(relevant, beta));
}

std::vector<ComplexMatrix> gibbs_state_derivatives(const RelevantSet& relevant,
                                                   const RealVector& beta) {
  const GibbsEval g = evaluate_gibbs(relevant, beta);
  return rho_beta_derivatives(relevant, g, expectations_of(relevant, g));
}

RealMatrix gibbs_jacobian(const RelevantSet& relevant, const RealVector& beta) {
  const GibbsEval g = evaluate_gibbs(relevant, beta);
  const RealVector e = expectations_of(relevant, g);
  return jacobian_from(relevant, rho_beta_derivatives(relevant, g, e));
}

namespace {

void check_spectral_domain(const RelevantSet& relevant, const RealVector& target) {
  if (target.size() != static_cast<Eigen::Index>(relevant.size())) {
    throw ValidationError("Gibbs target has length " + std::to_string(target.size()) +
                          ", expected " + std::to_string(relevant.size()));
  }
  if (!target.allFinite()) throw DomainError("E outside feasible domain: not finite");
  for (Eigen::Index m = 0; m < target.size(); ++m) {
    const double lo = relevant.lower_bounds()(m);
    const double hi = relevant.upper_bounds()(m);
    const double margin = 1e-9 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
    const double t = target(m);
    std::ostringstream where;
    where.precision(17);
    where << " (component " << m + 1 << ": E = " << t << ", achievable (" << lo << ", " << hi
          << "))";
    if (t < lo - margin || t > hi + margin) {
      throw DomainError("E outside feasible domain" + where.str());
    }
    if (t <= lo + margin || t >= hi - margin) {
      throw DomainError("E on feasible-domain boundary" + where.str());
    }
  }
}

double inf_norm(const RealVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

FitResult bisect_single(const RelevantSet& relevant, double target, const FitOptions& options,
                        int iterations_so_far) {
  auto f = [&](double b) {
    return gibbs_expectations(relevant, RealVector::Constant(1, b))(0) - target;
  };
  double lo = -1.0;
  double hi = 1.0;
  double flo = f(lo);
  double fhi = f(hi);
  // E(beta) decreases in beta: need f(lo) > 0 > f(hi).
  while (flo <= 0.0) {
    lo *= 2.0;
    if (lo < -1e8) throw FitError("fit_beta: cannot bracket target from below", std::abs(flo), iterations_so_far);
    flo = f(lo);
  }
  while (fhi >= 0.0) {
    hi *= 2.0;
    if (hi > 1e8) throw FitError("fit_beta: cannot bracket target from above", std::abs(fhi), iterations_so_far);
    fhi = f(hi);
  }
  int it = iterations_so_far;
  double mid = 0.5 * (lo + hi);
  double fmid = f(mid);
  for (int k = 0; k < 400 && std::abs(fmid) > options.tol; ++k, ++it) {
    if (fmid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    fmid = f(mid);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) break;
  }
  if (std::abs(fmid) > options.tol) {
    throw FitError("fit_beta: bisection stagnated above tolerance", std::abs(fmid), it);
  }
  return {RealVector::Constant(1, mid), std::abs(fmid), it};
}

}  // namespace

FitResult fit_beta(const RelevantSet& relevant, const RealVector& target,
                   const std::optional<RealVector>& beta_init, const FitOptions& options) {
  check_spectral_domain(relevant, target);
  const auto m = static_cast<Eigen::Index>(relevant.size());
  RealVector beta = beta_init ? *beta_init : RealVector::Zero(m);
  if (beta.size() != m) throw ValidationError("fit_beta: initial beta has wrong length");

  RealVector r = gibbs_expectations(relevant, beta) - target;
  double res = inf_norm(r);
  int it = 0;
  bool stalled = false;
  while (res > options.tol && it < options.max_iterations) {
    const RealMatrix j = gibbs_jacobian(relevant, beta);
    const RealVector step = (-j).ldlt().solve(r);
    if (!step.allFinite()) {
      stalled = true;
      break;
    }
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, scale *= 0.5) {
      const RealVector cand = beta + scale * step;
      const RealVector rc = gibbs_expectations(relevant, cand) - target;
      const double rcn = inf_norm(rc);
      if (std::isfinite(rcn) && rcn < res) {
        beta = cand;
        r = rc;
        res = rcn;
        accepted = true;
        break;
      }
    }
    ++it;
    if (!accepted) {
      stalled = true;
      break;
    }
  }
  if (res <= options.tol) {
    // Quadratic convergence: a couple of extra full steps reach round-off,
    // so repeated fits of the same target do not drift.
    for (int polish = 0; polish < 2 && res > 0.0; ++polish) {
      const RealVector cand = beta + (-gibbs_jacobian(relevant, beta)).ldlt().solve(r);
      const RealVector rc = gibbs_expectations(relevant, cand) - target;
      const double rcn = inf_norm(rc);
      if (!(rcn < res)) break;
      beta = cand;
      r = rc;
      res = rcn;
    }
    return {beta, res, it};
  }
  if (m == 1) return bisect_single(relevant, target(0), options, it);
  std::ostringstream msg;
  msg.precision(3);
  msg << "fit_beta: " << (stalled ? "Newton stagnated" : "iteration cap reached")
      << " with residual " << res << " after " << it << " iterations";
  throw FitError(msg.str(), res, it);
}

double qubit_beta_closed_form(double energy, double omega0) {
  if (!(omega0 > 0.0)) throw DomainError("qubit_beta_closed_form: omega0 must be positive");
  if (!(energy > 0.0 && energy < omega0)) {
    throw DomainError("qubit_beta_closed_form: E must lie in (0, omega0)");
  }
  return -std::log(energy / (omega0 - energy)) / omega0;
}

GibbsAnsatz::GibbsAnsatz(RelevantSet relevant, FitOptions options)
    : AnsatzFamily(std::move(relevant)), options_(options) {}

void GibbsAnsatz::check_feasible(const RealVector& e) const {
  check_spectral_domain(relevant(), e);
}

FitResult GibbsAnsatz::beta_of(const RealVector& e) const {
  return fit_beta(relevant(), e, std::nullopt, options_);
}

DensityMatrix GibbsAnsatz::state_of(const RealVector& e) const {
  return gibbs_state(relevant(), beta_of(e).beta);
}

std::vector<ComplexMatrix> GibbsAnsatz::derivative_of(const RealVector& e) const {
  const FitResult fit = beta_of(e);
  const GibbsEval g = evaluate_gibbs(relevant(), fit.beta);
  const RealVector eg = expectations_of(relevant(), g);
  const std::vector<ComplexMatrix> drho = rho_beta_derivatives(relevant(), g, eg);
  const RealMatrix j = jacobian_from(relevant(), drho);
  Eigen::FullPivLU<RealMatrix> lu(j);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw SingularityError("Gibbs ansatz: Jacobian dE/dbeta is singular");
  }
  const RealMatrix jinv = lu.inverse();
  std::vector<ComplexMatrix> out;
  out.reserve(size());
  for (Eigen::Index jj = 0; jj < jinv.cols(); ++jj) {
    ComplexMatrix acc = ComplexMatrix::Zero(dim(), dim());
    for (Eigen::Index n = 0; n < jinv.rows(); ++n) acc += jinv(n, jj) * drho[static_cast<std::size_t>(n)];
    out.push_back(0.5 * (acc + acc.adjoint()));
  }
  return out;
}

DensityMatrix posterior(const AnsatzFamily& family, const DensityMatrix& rho) {
  if (rho.dim() != family.dim()) throw ValidationError("posterior: dimension mismatch");
  return family.state_of(family.parameters_of(rho.matrix()));
}

std::vector<ComplexMatrix> ansatz_derivative(const AnsatzFamily& family, const RealVector& e) {
  return family.derivative_of(e);
}

}  // namespace strobotherm
