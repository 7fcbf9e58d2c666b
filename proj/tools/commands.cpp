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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "strobotherm/errors.hpp"
#include "strobotherm/kernels.hpp"
#include "strobotherm/matcore.hpp"

namespace strobotherm::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

constexpr const char* kSummarySchema = "strobotherm.summary/1";
constexpr const char* kCompareSchema = "strobotherm.compare/1";
constexpr const char* kFitSchema = "strobotherm.fit/1";
constexpr const char* kInvarianceSchema = "strobotherm.invariance/1";

// Protocol name usable inside JSON keys and file names.
std::string key_of(Protocol p) {
  std::string s = to_string(p);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

json to_json(const RealVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

void write_json(const fs::path& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

long long whole_ratio(double num, double den) { return std::llround(num / den); }

struct Series {
  Protocol protocol;
  std::vector<RealVector> energy;
  std::optional<std::vector<RealVector>> beta;
  double fit_max_residual = 0.0;
};

RealVector initial_energy(const Scenario& sc) {
  if (sc.initial_e) return *sc.initial_e;
  if (sc.initial_beta) return gibbs_expectations(sc.gibbs->relevant(), *sc.initial_beta);
  throw ConfigError("initial: this command needs an initial 'E' or 'beta'");
}

double max_deviation(const std::vector<RealVector>& a, const std::vector<RealVector>& b) {
  if (a.size() != b.size()) throw Error("trajectories have different sample counts");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return dev;
}

void check_samples(const std::vector<RealVector>& v, long long expected, Protocol p) {
  if (static_cast<long long>(v.size()) != expected + 1) {
    throw Error(std::string(to_string(p)) + ": unexpected number of samples");
  }
}

std::vector<RealVector> run_energy(const Scenario& sc, const StrobConfig& cfg, Protocol p,
                                   const RealVector& e0) {
  const long long samples = whole_ratio(cfg.horizon, cfg.dt);
  const int every = static_cast<int>(whole_ratio(cfg.dt, cfg.ode_step));
  std::vector<RealVector> out;
  switch (p) {
    case Protocol::kDiscrete:
      out = run_discrete(sc.generator, *sc.family, e0, cfg).params;
      break;
    case Protocol::kOde1:
    case Protocol::kOde2: {
      const StrobDynamics dyn(sc.generator, *sc.family, cfg);
      const bool second = p == Protocol::kOde2;
      OdeRhs rhs = [&](double, const RealVector& e) {
        return second ? dyn.rhs_second_order(e) : dyn.rhs_first_order(e);
      };
      out = integrate(rhs, e0, cfg.horizon, cfg.ode_step, every).params;
      break;
    }
    case Protocol::kClosedForm: {
      QubitParams q = sc.qubit;
      q.dt = cfg.dt;
      for (long long n = 0; n <= samples; ++n) {
        const double t = static_cast<double>(n) * cfg.dt;
        out.push_back(RealVector::Constant(1, qubit_E_closed_form(t, e0(0), q, sc.drive_coefficient)));
      }
      break;
    }
    case Protocol::kOdeTemperature:
      throw Error("temperature protocol has its own runner");
  }
  check_samples(out, samples, p);
  return out;
}

Series run_protocol(const Scenario& sc, const StrobConfig& cfg, Protocol p, const RealVector& e0) {
  Series s{p, {}, std::nullopt};
  if (p == Protocol::kOdeTemperature) {
    const RealVector b0 = sc.initial_beta ? *sc.initial_beta : sc.gibbs->beta_of(e0).beta;
    const TemperatureDynamics td(sc.generator, *sc.gibbs, cfg);
    OdeRhs rhs = [&](double, const RealVector& b) { return RealVector::Constant(1, td.rhs(b(0))); };
    const int every = static_cast<int>(whole_ratio(cfg.dt, cfg.ode_step));
    std::vector<RealVector> betas = integrate(rhs, b0, cfg.horizon, cfg.ode_step, every).params;
    check_samples(betas, whole_ratio(cfg.horizon, cfg.dt), p);
    for (const RealVector& b : betas) s.energy.push_back(RealVector::Constant(1, td.energy(b(0))));
    s.beta = std::move(betas);
    return s;
  }
  s.energy = run_energy(sc, cfg, p, e0);
  if (sc.gibbs) {
    s.beta.emplace();
    for (const RealVector& e : s.energy) {
      if (p == Protocol::kClosedForm) {
        s.beta->push_back(RealVector::Constant(1, qubit_beta_closed_form(e(0), sc.qubit.omega0)));
      } else {
        const FitResult fit = sc.gibbs->beta_of(e);
        s.fit_max_residual = std::max(s.fit_max_residual, fit.residual);
        s.beta->push_back(fit.beta);
      }
    }
  }
  return s;
}

std::string series_csv(const Series& s, double dt) {
  const std::size_t m = static_cast<std::size_t>(s.energy.front().size());
  std::ostringstream out;
  out << "t";
  for (std::size_t j = 1; j <= m; ++j) out << ",E_" << j;
  if (s.beta)
    for (std::size_t j = 1; j <= m; ++j) out << ",beta_" << j;
  out << "\n";
  for (std::size_t n = 0; n < s.energy.size(); ++n) {
    out << format_double(static_cast<double>(n) * dt);
    for (Eigen::Index j = 0; j < s.energy[n].size(); ++j) out << "," << format_double(s.energy[n](j));
    if (s.beta)
      for (Eigen::Index j = 0; j < (*s.beta)[n].size(); ++j) out << "," << format_double((*s.beta)[n](j));
    out << "\n";
  }
  return out.str();
}

struct ExpFit {
  double tau;
  double stationary;
};

// Exponential E(t) = E_st + (E_0 - E_st) e^{-t / tau} through the samples
// at 0, k and 2k of the first component.
std::optional<ExpFit> exponential_fit(const std::vector<RealVector>& e, double dt) {
  const std::size_t k = (e.size() - 1) / 2;
  if (k < 1) return std::nullopt;
  const double e0 = e[0](0), e1 = e[k](0), e2 = e[2 * k](0);
  const double d1 = e1 - e0, d2 = e2 - e1;
  if (std::abs(d1) <= 1e-14 * std::max(1.0, std::abs(e0))) return std::nullopt;
  const double r = d2 / d1;
  if (!(r > 0.0 && r < 1.0)) return std::nullopt;
  return ExpFit{-static_cast<double>(k) * dt / std::log(r), e0 + d1 / (1.0 - r)};
}

// Samples over which rhs cross-checks are evaluated.
std::vector<RealVector> check_points(const std::vector<Series>& runs) {
  return runs.empty() ? std::vector<RealVector>{} : runs.front().energy;
}

double finite_difference_dev(const Scenario& sc, const std::vector<RealVector>& points) {
  const StrobDynamics dyn(sc.generator, *sc.family, sc.strob);
  double dev = 0.0;
  for (const RealVector& e : points) {
    const RealVector a = dyn.rhs_second_order(e, DerivativeMode::kAnalytic);
    const RealVector f = dyn.rhs_second_order(e, DerivativeMode::kFiniteDifference);
    dev = std::max(dev, (a - f).cwiseAbs().maxCoeff());
  }
  return dev;
}

double generic_vs_analytic_dev(const Scenario& sc, const std::vector<RealVector>& points) {
  const StrobDynamics dyn(sc.generator, *sc.family, sc.strob);
  double dev = 0.0;
  for (const RealVector& e : points) {
    double a = 0.0, b = 0.0;
    if (sc.model_kind == ModelKind::kQubit) {
      a = qubit_A_analytic(e(0), sc.qubit);
      b = qubit_B_analytic(e(0), sc.qubit);
    } else {
      const double beta = sc.gibbs->beta_of(e).beta(0);
      a = multilevel_A_analytic(beta, sc.multilevel);
      b = multilevel_B_analytic(beta, sc.multilevel);
    }
    dev = std::max({dev, std::abs(dyn.velocity(e)(0) - a), std::abs(dyn.curvature(e)(0) - b)});
  }
  return dev;
}

json protocol_names(const Scenario& sc) {
  json a = json::array();
  for (Protocol p : sc.protocols) a.push_back(to_string(p));
  return a;
}

void describe(json& doc, const Scenario& sc, const char* schema, const char* command) {
  doc["schema"] = schema;
  doc["command"] = command;
  doc["scenario"] = sc.name;
  doc["model"] = to_string(sc.model_kind);
  doc["ansatz"] = to_string(sc.ansatz_kind);
  doc["M"] = sc.family->size();
  doc["d"] = sc.generator.dim();
}

void describe_strob(json& doc, const StrobConfig& cfg) {
  doc["lambda"] = cfg.lambda;
  doc["dt"] = cfg.dt;
  doc["alpha"] = cfg.alpha;
  doc["T"] = cfg.horizon;
  doc["h"] = cfg.ode_step;
}

void check_initial(const Scenario& sc, const RealVector& e0) {
  try {
    sc.family->check_feasible(e0);
  } catch (const DomainError& err) {
    throw DomainError(std::string("step 0: ") + err.what());
  }
}

}  // namespace

int cmd_simulate(const Scenario& sc, const std::string& out_dir) {
  if (sc.protocols.empty()) throw ConfigError("protocols: simulate needs at least one protocol");
  const RealVector e0 = initial_energy(sc);
  check_initial(sc, e0);

  std::vector<Series> runs;
  for (Protocol p : sc.protocols) runs.push_back(run_protocol(sc, sc.strob, p, e0));

  json doc;
  describe(doc, sc, kSummarySchema, "simulate");
  describe_strob(doc, sc.strob);
  doc["protocols"] = protocol_names(sc);
  doc["samples"] = runs.front().energy.size();
  doc["E_initial"] = to_json(e0);

  double fit_residual = 0.0;
  for (const Series& s : runs) {
    const std::string k = key_of(s.protocol);
    write_file(fs::path(out_dir) / (sc.name + "_" + k + ".csv"), series_csv(s, sc.strob.dt));
    doc["E_final_" + k] = to_json(s.energy.back());
    doc["beta_final_" + k] = s.beta ? to_json(s.beta->back()) : json(nullptr);
    const std::optional<ExpFit> fit = exponential_fit(s.energy, sc.strob.dt);
    doc["tau_" + k] = optional_number(fit ? std::optional<double>(fit->tau) : std::nullopt);
    doc["E_stationary_" + k] =
        optional_number(fit ? std::optional<double>(fit->stationary) : std::nullopt);
    fit_residual = std::max(fit_residual, s.fit_max_residual);
  }
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = i + 1; j < runs.size(); ++j)
      doc["max_dev_" + key_of(runs[i].protocol) + "_vs_" + key_of(runs[j].protocol)] =
          max_deviation(runs[i].energy, runs[j].energy);

  if (sc.model_kind == ModelKind::kQubit) {
    const double c = sc.drive_coefficient;
    doc["drive_coefficient"] = c;
    doc["closed_form_E_stationary"] = qubit_E_stationary(sc.qubit, c);
    doc["closed_form_beta_stationary"] = qubit_beta_stationary(sc.qubit, c);
    doc["closed_form_tau"] = qubit_tau(sc.qubit, c);
    doc["expansion_E_stationary"] = qubit_E_stationary(sc.qubit, kExpansionDriveCoefficient);
    doc["expansion_beta_stationary"] = qubit_beta_stationary(sc.qubit, kExpansionDriveCoefficient);
    doc["expansion_tau"] = qubit_tau(sc.qubit, kExpansionDriveCoefficient);
  }

  json diag;
  diag["gram_condition"] = sc.family->relevant().gram_condition();
  diag["invariant_residual"] = invariant_subspace_matrix(sc.generator, sc.family->relevant()).residual;
  const std::vector<RealVector> points = check_points(runs);
  diag["finite_difference_max_dev"] =
      sc.cross_check_finite_difference ? json(finite_difference_dev(sc, points)) : json(nullptr);
  diag["generic_vs_analytic_max_dev"] =
      sc.cross_check_analytic ? json(generic_vs_analytic_dev(sc, points)) : json(nullptr);
  diag["fit_max_residual"] = sc.gibbs ? json(fit_residual) : json(nullptr);
  diag["choi_min_eigenvalue"] =
      choi_min_eigenvalue(sc.generator.scaled(sc.strob.lambda), sc.strob.dt);
  doc["diagnostics"] = diag;

  write_json(fs::path(out_dir) / (sc.name + "_summary.json"), doc);
  return kExitOk;
}

int cmd_compare(const Scenario& sc, const std::string& out_dir) {
  if (sc.dt_ladder.empty()) throw ConfigError("strob.dt_ladder: compare needs a dt ladder");
  const RealVector e0 = initial_energy(sc);
  check_initial(sc, e0);

  const std::size_t n = sc.dt_ladder.size();
  std::vector<double> dev1(n), dev2(n);
  kernels::parallel_for(n, [&](std::size_t k) {
    const StrobConfig cfg =
        StrobConfig::make(sc.strob.lambda, sc.dt_ladder[k], sc.strob.horizon, sc.strob.ode_step);
    const std::vector<RealVector> disc = run_energy(sc, cfg, Protocol::kDiscrete, e0);
    dev1[k] = max_deviation(disc, run_energy(sc, cfg, Protocol::kOde1, e0));
    dev2[k] = max_deviation(disc, run_energy(sc, cfg, Protocol::kOde2, e0));
  });

  constexpr double kCoincident = 1e-12;
  json doc;
  describe(doc, sc, kCompareSchema, "compare");
  doc["lambda"] = sc.strob.lambda;
  doc["T"] = sc.strob.horizon;
  doc["h"] = sc.strob.ode_step;
  doc["dt"] = sc.dt_ladder;
  doc["max_dev_ode1"] = dev1;
  doc["max_dev_ode2"] = dev2;

  bool passed = true;
  json closer = json::array(), coincident = json::array();
  std::ostringstream csv;
  csv << "dt,max_dev_ode1,max_dev_ode2\n";
  for (std::size_t k = 0; k < n; ++k) {
    const bool same = std::abs(dev1[k] - dev2[k]) <= kCoincident;
    const bool better = dev2[k] < dev1[k];
    closer.push_back(better);
    coincident.push_back(same);
    passed = passed && (better || same);
    csv << format_double(sc.dt_ladder[k]) << "," << format_double(dev1[k]) << ","
        << format_double(dev2[k]) << "\n";
  }
  auto ratios = [&](const std::vector<double>& dev, bool order) {
    json a = json::array();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (!(dev[k + 1] > 0.0) || !(dev[k] > 0.0)) {
        a.push_back(nullptr);
        continue;
      }
      const double r = dev[k] / dev[k + 1];
      a.push_back(order ? std::log(r) / std::log(sc.dt_ladder[k] / sc.dt_ladder[k + 1]) : r);
    }
    return a;
  };
  doc["ratio_ode1"] = ratios(dev1, false);
  doc["ratio_ode2"] = ratios(dev2, false);
  doc["order_ode1"] = ratios(dev1, true);
  doc["order_ode2"] = ratios(dev2, true);
  doc["ode2_closer"] = closer;
  doc["coincident"] = coincident;
  doc["passed"] = passed;

  json diag;
  diag["gram_condition"] = sc.family->relevant().gram_condition();
  diag["invariant_residual"] = invariant_subspace_matrix(sc.generator, sc.family->relevant()).residual;
  doc["diagnostics"] = diag;

  write_file(fs::path(out_dir) / (sc.name + "_compare.csv"), csv.str());
  write_json(fs::path(out_dir) / (sc.name + "_compare.json"), doc);
  if (!passed) {
    std::cerr << "compare: ode2 is not strictly closer to the discrete protocol than ode1 at every dt\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

// Mean of the last `tail` rows of the E columns of a simulate CSV.
RealVector trajectory_tail(const fs::path& path, std::size_t m, int tail) {
  std::ifstream in(path);
  if (!in) throw ConfigError("fit.trajectory: cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("fit.trajectory: empty file");
  const std::vector<std::string> header = split(line);
  if (header.size() < m + 1 || header[0] != "t") throw ConfigError("fit.trajectory: unexpected header");
  for (std::size_t j = 1; j <= m; ++j)
    if (header[j] != "E_" + std::to_string(j)) throw ConfigError("fit.trajectory: unexpected header");
  std::vector<RealVector> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) throw ConfigError("fit.trajectory: ragged row");
    RealVector e(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
      try {
        e(static_cast<Eigen::Index>(j)) = std::stod(cells[j + 1]);
      } catch (const std::exception&) {
        throw ConfigError("fit.trajectory: bad number '" + cells[j + 1] + "'");
      }
    }
    rows.push_back(e);
  }
  if (rows.size() < static_cast<std::size_t>(tail)) throw ConfigError("fit.trajectory: fewer rows than tail");
  RealVector mean = RealVector::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t i = rows.size() - static_cast<std::size_t>(tail); i < rows.size(); ++i) mean += rows[i];
  return mean / static_cast<double>(tail);
}

}  // namespace

int cmd_fit(const Scenario& sc, const std::string& out_dir) {
  if (!sc.gibbs) throw ConfigError("ansatz: fit needs a Gibbs ansatz");
  const bool has_target = sc.fit.target.has_value();
  const bool has_traj = !sc.fit.trajectory_path.empty();
  if (has_target == has_traj) throw ConfigError("fit: give exactly one of 'target' or 'trajectory'");

  RealVector target;
  if (has_target) {
    target = *sc.fit.target;
  } else {
    fs::path p(sc.fit.trajectory_path);
    if (p.is_relative() && !sc.base_dir.empty()) p = fs::path(sc.base_dir) / p;
    target = trajectory_tail(p, sc.family->size(), sc.fit.tail);
  }
  if (static_cast<std::size_t>(target.size()) != sc.family->size()) {
    throw ConfigError("fit.target: expected " + std::to_string(sc.family->size()) + " entries");
  }

  const FitResult fit = fit_beta(sc.gibbs->relevant(), target, std::nullopt, sc.gibbs->options());

  json doc;
  describe(doc, sc, kFitSchema, "fit");
  doc["source"] = has_target ? "target" : "trajectory";
  doc["target"] = to_json(target);
  doc["beta"] = to_json(fit.beta);
  doc["residual"] = fit.residual;
  doc["iterations"] = fit.iterations;
  if (sc.model_kind == ModelKind::kQubit && sc.ansatz_kind == AnsatzKind::kGibbsCanonical) {
    const double exact = qubit_beta_closed_form(target(0), sc.qubit.omega0);
    doc["closed_form_beta"] = exact;
    doc["closed_form_beta_dev"] = std::abs(exact - fit.beta(0));
  }
  json diag;
  diag["gram_condition"] = sc.family->relevant().gram_condition();
  diag["expectation_residual"] =
      (gibbs_expectations(sc.gibbs->relevant(), fit.beta) - target).cwiseAbs().maxCoeff();
  doc["diagnostics"] = diag;
  write_json(fs::path(out_dir) / (sc.name + "_fit.json"), doc);
  return kExitOk;
}

int cmd_analyze_invariance(const Scenario& sc, const std::string& out_dir) {
  const RelevantSet& relevant = sc.family->relevant();
  const InvariantSubspace inv = invariant_subspace_matrix(sc.generator, relevant);
  const StrobDynamics dyn(sc.generator, *sc.family, sc.strob);

  // Probe parameters from thermal-like states of the model observable.
  constexpr int kSamples = 20;
  const HermitianEigen eig = herm_eig(sc.gibbs_hamiltonian);
  const double spread = std::max(eig.values.maxCoeff() - eig.values.minCoeff(), 1e-300);
  double bracket_max = 0.0, reduction_max = 0.0;
  int used = 0;
  for (int k = 0; k < kSamples; ++k) {
    const double b = (-4.0 + 8.0 * k / (kSamples - 1)) / spread;
    ComplexMatrix rho = exp_hermitian(eig, -b);
    rho /= rho.trace();
    const RealVector e = relevant.expectations(rho);
    try {
      sc.family->check_feasible(e);
      bracket_max = std::max(bracket_max, dyn.bracket(e).cwiseAbs().maxCoeff());
      if (inv.invariant) {
        const Eigen::Index m = e.size();
        const RealVector linear =
            sc.strob.lambda * (inv.generator.block(1, 0, m, 1).col(0) + inv.generator.block(1, 1, m, m) * e);
        reduction_max = std::max(reduction_max, (dyn.rhs_second_order(e) - linear).cwiseAbs().maxCoeff());
      }
      ++used;
    } catch (const DomainError&) {
    }
  }

  json doc;
  describe(doc, sc, kInvarianceSchema, "analyze-invariance");
  describe_strob(doc, sc.strob);
  json basis = json::array({"I"});
  for (std::size_t m = 1; m <= relevant.size(); ++m) basis.push_back("P_" + std::to_string(m));
  doc["basis"] = basis;
  json rows = json::array();
  for (Eigen::Index i = 0; i < inv.generator.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < inv.generator.cols(); ++j) row.push_back(inv.generator(i, j));
    rows.push_back(row);
  }
  doc["L"] = rows;
  doc["residual"] = inv.residual;
  doc["invariant"] = inv.invariant;
  doc["bracket_samples"] = used;
  doc["bracket_max"] = used > 0 ? json(bracket_max) : json(nullptr);
  doc["reduction_max_dev"] = inv.invariant && used > 0 ? json(reduction_max) : json(nullptr);
  json diag;
  diag["gram_condition"] = relevant.gram_condition();
  doc["diagnostics"] = diag;
  write_json(fs::path(out_dir) / (sc.name + "_invariance.json"), doc);
  return kExitOk;
}

int run_command(const std::string& command, const std::string& scenario_path,
                const std::string& out_dir) {
  try {
    const Scenario sc = load_scenario(scenario_path);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw OutputError("cannot create output directory '" + out_dir + "': " + ec.message());
    if (command == "simulate") return cmd_simulate(sc, out_dir);
    if (command == "compare") return cmd_compare(sc, out_dir);
    if (command == "fit") return cmd_fit(sc, out_dir);
    if (command == "analyze-invariance") return cmd_analyze_invariance(sc, out_dir);
    throw ConfigError("unknown command '" + command + "'");
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const FitError& err) {
    std::cerr << "fit error: " << err.what() << " (residual " << format_double(err.residual())
              << " after " << err.iterations() << " iterations)\n";
    return kExitRuntime;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace strobotherm::cli
