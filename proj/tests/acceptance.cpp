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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
//
// Usage: strobotherm_acceptance <cli-binary> <scenario-dir> <golden-dir> <work-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "golden.hpp"
#include "strobotherm/ansatz.hpp"
#include "strobotherm/errors.hpp"
#include "strobotherm/liouville.hpp"
#include "strobotherm/models.hpp"
#include "strobotherm/strob.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace strobotherm;

namespace {

// High-precision reference values for the standard qubit
// (omega0 = 1, beta0 = 1, gamma = 0.5, Omega = 0.2, dt = 0.1).
constexpr double kEStationary = 0.274223215143588109;
constexpr double kBetaStationary = 0.973300080127680136;
constexpr double kTau = 1.42869445837876356;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome closed_form_reproduction() {
  const QubitParams p = testing::standard_qubit();
  const double e0 = 0.5;
  const OdeRhs printed = [&](double, const RealVector& e) {
    return RealVector::Constant(1, qubit_rhs_closed_form(e(0), p, kPrintedDriveCoefficient));
  };
  const Trajectory traj = integrate(printed, RealVector::Constant(1, e0), 10.0, 1e-3);
  double dev = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    dev = std::max(dev, std::abs(traj.params[i](0) - qubit_E_closed_form(traj.times[i], e0, p)));
  const double de = std::abs(qubit_E_stationary(p) - kEStationary);
  const double db = std::abs(qubit_beta_stationary(p) - kBetaStationary);
  const double dt = std::abs(qubit_tau(p) - kTau);

  // The generic second-order pipeline agrees with the c = 1 closed form.
  const GibbsAnsatz gibbs(RelevantSet({qubit_gibbs_hamiltonian(p)}));
  const GkslGenerator gen = qubit_generator(p);
  const StrobDynamics dyn(gen, gibbs, StrobConfig::make(1.0, p.dt, 10.0, 1e-3));
  const OdeRhs generic = [&](double, const RealVector& e) { return dyn.rhs_second_order(e); };
  const Trajectory gt = integrate(generic, RealVector::Constant(1, e0), 10.0, 1e-2);
  double gdev = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i)
    gdev = std::max(gdev, std::abs(gt.params[i](0) -
                                   qubit_E_closed_form(gt.times[i], e0, p, kExpansionDriveCoefficient)));

  const bool pass = dev <= 1e-8 && de <= 1e-8 && db <= 1e-6 && dt <= 1e-6;
  return {pass, "rk4 vs closed form " + sci(dev) + ", E_st " + sci(de) + ", beta_st " + sci(db) +
                    ", tau " + sci(dt) + "; generic pipeline vs c=1 closed form " + sci(gdev)};
}

Outcome unbiased_without_drive() {
  QubitParams p = testing::standard_qubit();
  p.Omega = 0.0;
  double beta_dev = 0.0;
  for (double c : {kPrintedDriveCoefficient, kExpansionDriveCoefficient})
    beta_dev = std::max(beta_dev, std::abs(qubit_beta_stationary(p, c) - p.beta0));
  const GibbsAnsatz gibbs(RelevantSet({qubit_gibbs_hamiltonian(p)}));
  const GkslGenerator gen = qubit_generator(p);
  const StrobDynamics dyn(gen, gibbs, StrobConfig::make(1.0, p.dt, 1.0));
  double bracket = 0.0;
  for (int k = 0; k <= 90; ++k) {
    const RealVector e = RealVector::Constant(1, 0.05 + 0.01 * k);
    bracket = std::max(bracket, std::abs(dyn.bracket(e)(0)));
  }
  return {beta_dev <= 1e-12 && bracket <= 1e-12,
          "beta_st - beta0 " + sci(beta_dev) + ", max bracket " + sci(bracket)};
}

Outcome discrete_convergence() {
  const auto start = std::chrono::steady_clock::now();
  const QubitParams p = testing::standard_qubit();
  const GibbsAnsatz gibbs(RelevantSet({qubit_gibbs_hamiltonian(p)}));
  const GkslGenerator gen = qubit_generator(p);
  const RealVector e0 = RealVector::Constant(1, 0.5);
  const std::vector<double> ladder = {0.1, 0.05, 0.025};
  std::vector<double> dev1, dev2;
  for (double dt : ladder) {
    const StrobConfig cfg = StrobConfig::make(1.0, dt, 5.0, 1e-3);
    const Trajectory disc = run_discrete(gen, gibbs, e0, cfg);
    const StrobDynamics dyn(gen, gibbs, cfg);
    const int every = static_cast<int>(std::llround(dt / cfg.ode_step));
    const Trajectory o1 = integrate([&](double, const RealVector& e) { return dyn.rhs_first_order(e); },
                                    e0, cfg.horizon, cfg.ode_step, every);
    const Trajectory o2 = integrate([&](double, const RealVector& e) { return dyn.rhs_second_order(e); },
                                    e0, cfg.horizon, cfg.ode_step, every);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < disc.size(); ++i) {
      d1 = std::max(d1, std::abs(disc.params[i](0) - o1.params[i](0)));
      d2 = std::max(d2, std::abs(disc.params[i](0) - o2.params[i](0)));
    }
    dev1.push_back(d1);
    dev2.push_back(d2);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = seconds < 30.0;
  std::string detail = "ode2 devs";
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    pass = pass && dev2[k] < dev1[k];
    detail += " " + sci(dev2[k]) + "<" + sci(dev1[k]);
  }
  detail += ", ratios";
  for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
    const double r = dev2[k] / dev2[k + 1];
    pass = pass && r >= 3.0;
    detail += " " + sci(r);
  }
  return {pass, detail + ", " + sci(seconds) + " s"};
}

Outcome generic_analytic_equivalence() {
  double dev = 0.0;
  int cases = 0;
  for (double w : {0.5, 1.0, 2.0})
    for (double b0 : {0.5, 1.0, 2.0})
      for (double g : {0.1, 0.5})
        for (double om : {0.0, 0.2, 0.5})
          for (double dt : {0.05, 0.1}) {
            QubitParams p;
            p.omega0 = w;
            p.beta0 = b0;
            p.gamma = g;
            p.Omega = om;
            p.dt = dt;
            const GibbsAnsatz gibbs(RelevantSet({qubit_gibbs_hamiltonian(p)}));
            const GkslGenerator gen = qubit_generator(p);
            for (int k = 1; k < 20; ++k) {
              const RealVector e = RealVector::Constant(1, w * k / 20.0);
              dev = std::max(dev, std::abs(relevant_velocity(gen, gibbs, e)(0) - qubit_A_analytic(e(0), p)));
              dev = std::max(dev, std::abs(relevant_curvature(gen, gibbs, e)(0) - qubit_B_analytic(e(0), p)));
              ++cases;
            }
          }
  for (double b0 : {0.5, 1.0, 2.0}) {
    const MultilevelParams p = testing::three_level(b0);
    const GibbsAnsatz gibbs(RelevantSet({multilevel_gibbs_hamiltonian(p)}));
    const GkslGenerator gen = multilevel_generator(p);
    for (double beta : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      const RealVector e = gibbs_expectations(gibbs.relevant(), RealVector::Constant(1, beta));
      dev = std::max(dev, std::abs(relevant_velocity(gen, gibbs, e)(0) - multilevel_A_analytic(beta, p)));
      dev = std::max(dev, std::abs(relevant_curvature(gen, gibbs, e)(0) - multilevel_B_analytic(beta, p)));
      ++cases;
    }
  }
  return {dev <= 1e-10, std::to_string(cases) + " points, max deviation " + sci(dev)};
}

Outcome multilevel_exactness() {
  const MultilevelParams p = testing::three_level(1.0);
  const GibbsAnsatz gibbs(RelevantSet({multilevel_gibbs_hamiltonian(p)}));
  const GkslGenerator gen = multilevel_generator(p);
  const RealVector e_eq = gibbs_expectations(gibbs.relevant(), RealVector::Constant(1, p.beta0));
  const double a_eq = std::abs(relevant_velocity(gen, gibbs, e_eq)(0));

  const StrobConfig cfg = StrobConfig::make(1.0, 0.1, 50.0, 1e-2);
  const TemperatureDynamics td(gen, gibbs, cfg);
  bool monotone = true;
  double terminal = 0.0;
  for (double start : {p.beta0 - 0.5, p.beta0 + 0.5}) {
    const Trajectory traj = integrate(
        [&](double, const RealVector& b) { return RealVector::Constant(1, td.rhs(b(0))); },
        RealVector::Constant(1, start), cfg.horizon, cfg.ode_step);
    const double side = start - p.beta0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const double prev = traj.params[i - 1](0) - p.beta0;
      const double cur = traj.params[i](0) - p.beta0;
      if (std::abs(cur) > std::abs(prev) || cur * side < 0.0) monotone = false;
    }
    terminal = std::max(terminal, std::abs(traj.params.back()(0) - p.beta0));
  }
  return {a_eq <= 1e-12 && monotone && terminal <= 1e-6,
          "<A> at beta0 " + sci(a_eq) + ", monotone " + (monotone ? "yes" : "no") +
              ", terminal error " + sci(terminal)};
}

RealMatrix fd_jacobian(const RelevantSet& rs, const RealVector& beta) {
  const double h = 1e-5;
  RealMatrix j(static_cast<Eigen::Index>(rs.size()), beta.size());
  for (Eigen::Index n = 0; n < beta.size(); ++n) {
    RealVector up = beta, dn = beta;
    up(n) += h;
    dn(n) -= h;
    j.col(n) = (gibbs_expectations(rs, up) - gibbs_expectations(rs, dn)) / (2.0 * h);
  }
  return j;
}

Outcome gibbs_fitting() {
  std::mt19937_64 rng(testing::kSeed + 600);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double roundtrip = 0.0, jac = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    const int m = 1 + trial % 3;
    std::vector<ComplexMatrix> ps;
    if (trial == 0) {
      ps = {pauli::z(), pauli::x()};
    } else if (trial == 1) {
      ps = {pauli::z(), pauli::x(), pauli::y()};
    } else {
      for (int k = 0; k < m; ++k) ps.push_back(testing::random_hermitian(rng, d, 0.5));
    }
    const RelevantSet rs(ps);
    RealVector beta(static_cast<Eigen::Index>(ps.size()));
    for (Eigen::Index k = 0; k < beta.size(); ++k) beta(k) = u(rng);
    const FitResult fit = fit_beta(rs, gibbs_expectations(rs, beta));
    roundtrip = std::max(roundtrip, (fit.beta - beta).cwiseAbs().maxCoeff());
    const RealMatrix j = gibbs_jacobian(rs, beta);
    jac = std::max(jac, (j - fd_jacobian(rs, beta)).norm() / j.norm());
  }
  return {roundtrip <= 1e-8 && jac <= 1e-6,
          "200 instances, roundtrip " + sci(roundtrip) + ", jacobian rel " + sci(jac)};
}

Outcome structural_invariants() {
  std::mt19937_64 rng(testing::kSeed + 700);
  double duality = 0.0, trace = 0.0, choi = 1.0, idem = 0.0, dcons = 0.0, proj = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 4;
    const GkslGenerator gen = testing::random_generator(rng, d, 1 + trial % 3);
    const ComplexMatrix x = testing::random_complex(rng, d);
    const DensityMatrix rho = testing::random_state(rng, d);
    const cplx lhs = frobenius(x, apply_schrodinger(gen, rho.matrix()));
    const cplx rhs = frobenius(apply_heisenberg(gen, x), rho.matrix());
    duality = std::max(duality, std::abs(lhs - rhs));
    trace = std::max(trace, std::abs(apply_schrodinger(gen, rho.matrix()).trace()));
    trace = std::max(trace, std::abs(propagate(gen, rho, 0.7).matrix().trace() - 1.0));
    choi = std::min(choi, choi_min_eigenvalue(gen, 0.3));
  }

  std::vector<std::shared_ptr<AnsatzFamily>> families = {
      std::make_shared<GibbsAnsatz>(RelevantSet({pauli::z()})),
      std::make_shared<GibbsAnsatz>(RelevantSet({pauli::z(), pauli::x()})),
      std::make_shared<GibbsAnsatz>(RelevantSet(
          {testing::random_hermitian(rng, 3, 0.5), testing::random_hermitian(rng, 3, 0.5)})),
      std::make_shared<LinearAnsatz>(pinching_ansatz(
          ComplexMatrix(RealVector::LinSpaced(4, 0.0, 3.0).cast<cplx>().asDiagonal()))),
      std::make_shared<LinearAnsatz>(factorized_ansatz(testing::random_state(rng, 2), 2, 2)),
  };
  int idem_cases = 0;
  for (const auto& fam : families) {
    for (int trial = 0; trial < 100; ++trial) {
      const DensityMatrix rho = testing::random_state(rng, fam->dim());
      const DensityMatrix once = posterior(*fam, rho);
      idem = std::max(idem, (posterior(*fam, once).matrix() - once.matrix()).cwiseAbs().maxCoeff());
      const RealVector e = fam->relevant().expectations(once.matrix());
      const std::vector<ComplexMatrix> dr = fam->derivative_of(e);
      for (std::size_t m = 0; m < fam->size(); ++m)
        for (std::size_t j = 0; j < dr.size(); ++j)
          dcons = std::max(dcons, std::abs(trace_product(fam->relevant()[m], dr[j]).real() -
                                           (m == j ? 1.0 : 0.0)));
      ++idem_cases;
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    const ComplexMatrix h = testing::random_hermitian(rng, d);
    const LinearAnsatz pinch = pinching_ansatz(trial % 2 ? h : ComplexMatrix(h.diagonal().real().cast<cplx>().asDiagonal()));
    const ComplexMatrix y = testing::random_complex(rng, d);
    const ComplexMatrix once = pinch.project(y);
    proj = std::max(proj, (pinch.project(once) - once).cwiseAbs().maxCoeff());
  }
  const bool pass = duality <= 1e-10 && trace <= 1e-10 && choi >= -1e-8 && idem <= 1e-10 &&
                    dcons <= 1e-8 && proj <= 1e-12;
  return {pass, "duality " + sci(duality) + ", trace " + sci(trace) + ", choi min " + sci(choi) +
                    ", posterior idempotence " + sci(idem) + " (" + std::to_string(idem_cases) +
                    " cases), d-consistency " + sci(dcons) + ", pinching projector " + sci(proj)};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliRun {
  std::string command;
  std::string scenario;
};

int run_cli(const std::string& cli, const CliRun& run, const fs::path& scenarios, const fs::path& out,
            int threads) {
  const std::string cmd = "STROBOTHERM_THREADS=" + std::to_string(threads) + " \"" + cli + "\" " +
                          run.command + " \"" + (scenarios / (run.scenario + ".json")).string() +
                          "\" --out-dir \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_determinism(const std::string& cli, const fs::path& scenarios, const fs::path& golden,
                        const fs::path& work) {
  const std::vector<CliRun> runs = {
      {"simulate", "qubit_standard"}, {"simulate", "zero_generator"}, {"simulate", "multilevel"},
      {"simulate", "pinching_3level"}, {"compare", "qubit_compare"},  {"fit", "qubit_fit"},
      {"analyze-invariance", "qubit_undriven"},
  };
  const fs::path dirs[3] = {work / "run_a", work / "run_b", work / "run_c"};
  for (const fs::path& dir : dirs) fs::remove_all(dir);
  std::string detail;
  bool pass = true;
  for (int r = 0; r < 3; ++r) {
    for (const CliRun& run : runs) {
      const int code = run_cli(cli, run, scenarios, dirs[r], r == 2 ? 4 : 1);
      if (code != 0) {
        pass = false;
        detail += run.command + " " + run.scenario + " exited " + std::to_string(code) + "; ";
      }
    }
  }
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const std::string a = read_file(entry.path());
    for (int r = 1; r < 3; ++r) {
      const fs::path other = dirs[r] / entry.path().filename();
      if (!fs::exists(other) || read_file(other) != a) {
        pass = false;
        detail += entry.path().filename().string() + " differs in run " + std::to_string(r) + "; ";
      }
    }
    ++files;
  }
  const std::string golden_report = golden::compare_json_files(
      golden / "qubit_standard_summary.json", dirs[0] / "qubit_standard_summary.json");
  if (!golden_report.empty()) {
    pass = false;
    detail += "golden: " + golden_report;
  }
  return {pass && files > 0, std::to_string(files) + " files byte-identical across 3 runs "
                                 "(1 and 4 threads), golden summary " +
                                 (golden_report.empty() ? "matches" : "differs") +
                                 (detail.empty() ? "" : "; " + detail)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 5) {
    std::cerr << "usage: " << argv[0] << " <cli-binary> <scenario-dir> <golden-dir> <work-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path scenarios = argv[2], golden = argv[3], work = argv[4];
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"qubit closed-form reproduction", closed_form_reproduction},
      {"unbiasedness without drive", unbiased_without_drive},
      {"discrete vs ODE convergence", discrete_convergence},
      {"generic/analytic oracle equivalence", generic_analytic_equivalence},
      {"multilevel thermometer exactness", multilevel_exactness},
      {"Gibbs fitting", gibbs_fitting},
      {"structural invariants", structural_invariants},
      {"CLI determinism", [&] { return cli_determinism(cli, scenarios, golden, work); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& err) {
      o = {false, std::string("exception: ") + err.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first
              << " | " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
