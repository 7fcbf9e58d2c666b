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

#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "strobotherm/errors.hpp"

namespace strobotherm::cli {

using nlohmann::json;

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kQubit: return "qubit";
    case ModelKind::kMultilevel: return "multilevel";
    case ModelKind::kCustom: return "custom-gksl";
  }
  return "?";
}

const char* to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::kGibbsCanonical: return "gibbs-canonical";
    case AnsatzKind::kGibbsGeneralized: return "gibbs-generalized";
    case AnsatzKind::kPinching: return "pinching";
    case AnsatzKind::kSelective: return "selective";
    case AnsatzKind::kFactorized: return "factorized";
  }
  return "?";
}

const char* to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::kDiscrete: return "discrete";
    case Protocol::kOde1: return "ode1";
    case Protocol::kOde2: return "ode2";
    case Protocol::kOdeTemperature: return "ode-temperature";
    case Protocol::kClosedForm: return "closed-form";
  }
  return "?";
}

bool Scenario::has(Protocol p) const {
  return std::find(protocols.begin(), protocols.end(), p) != protocols.end();
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

const json& require(const json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return node.at(key);
}

double number(const json& node, const std::string& where) {
  if (!node.is_number()) fail(where, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(where, "must be finite");
  return v;
}

double number_at(const json& node, const char* key, const std::string& where) {
  return number(require(node, key, where), where + "." + key);
}

double number_or(const json& node, const char* key, double fallback, const std::string& where) {
  return node.contains(key) ? number(node.at(key), where + "." + key) : fallback;
}

bool bool_or(const json& node, const char* key, bool fallback, const std::string& where) {
  if (!node.contains(key)) return fallback;
  if (!node.at(key).is_boolean()) fail(where + "." + key, "expected true or false");
  return node.at(key).get<bool>();
}

std::string string_at(const json& node, const char* key, const std::string& where) {
  const json& v = require(node, key, where);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

RealVector vector_of(const json& node, const std::string& where) {
  if (node.is_number()) return RealVector::Constant(1, number(node, where));
  if (!node.is_array() || node.empty()) fail(where, "expected a non-empty list of numbers");
  RealVector v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number(node[i], where + "[" + std::to_string(i) + "]");
  return v;
}

RealMatrix real_rows(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) fail(where, "expected a list of rows");
  const std::size_t rows = node.size();
  const std::size_t cols = node[0].is_array() ? node[0].size() : 0;
  if (cols == 0) fail(where, "rows must be non-empty lists");
  RealMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!node[r].is_array() || node[r].size() != cols) fail(where, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          number(node[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

}  // namespace

ComplexMatrix parse_matrix(const json& node, const std::string& where) {
  ComplexMatrix m;
  if (node.is_object()) {
    const RealMatrix re = real_rows(require(node, "re", where), where + ".re");
    RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
    if (node.contains("im")) im = real_rows(node.at("im"), where + ".im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) fail(where, "re and im shapes differ");
    m = re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
  } else {
    if (!node.is_array() || node.empty()) fail(where, "expected a matrix");
    const std::size_t rows = node.size();
    m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::string rw = where + "[" + std::to_string(r) + "]";
      if (!node[r].is_array() || node[r].size() != rows) fail(rw, "matrix must be square");
      for (std::size_t c = 0; c < rows; ++c) {
        const json& e = node[r][c];
        const std::string ew = rw + "[" + std::to_string(c) + "]";
        cplx v;
        if (e.is_array()) {
          if (e.size() != 2) fail(ew, "complex entries are [re, im]");
          v = cplx(number(e[0], ew), number(e[1], ew));
        } else {
          v = number(e, ew);
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
      }
    }
  }
  if (m.rows() != m.cols()) fail(where, "matrix must be square");
  return m;
}

namespace {

void parse_model(const json& node, Scenario& sc) {
  const std::string where = "model";
  const std::string type = string_at(node, "type", where);
  if (type == "qubit") {
    sc.model_kind = ModelKind::kQubit;
    QubitParams& p = sc.qubit;
    p.omega0 = number_or(node, "omega0", 1.0, where);
    p.delta_omega = number_or(node, "delta_omega", 0.0, where);
    p.Omega = number_or(node, "Omega", 0.0, where);
    p.beta0 = number_at(node, "beta0", where);
    const bool has_gamma = node.contains("gamma");
    const bool has_gamma0 = node.contains("gamma0");
    if (has_gamma == has_gamma0) fail(where, "give exactly one of 'gamma' or 'gamma0' (bosonic)");
    if (has_gamma) {
      p.gamma = number_at(node, "gamma", where);
    } else {
      try {
        p.gamma = bosonic_gamma(number_at(node, "gamma0", where), p.beta0, p.omega0);
      } catch (const DomainError& err) {
        fail(where + ".gamma0", err.what());
      }
    }
  } else if (type == "multilevel") {
    sc.model_kind = ModelKind::kMultilevel;
    MultilevelParams& p = sc.multilevel;
    p.omegas = vector_of(require(node, "omegas", where), where + ".omegas");
    if (node.contains("lamb")) p.lamb = vector_of(node.at("lamb"), where + ".lamb");
    p.beta0 = number_at(node, "beta0", where);
    const json& rates = require(node, "base_rates", where);
    if (rates.is_number()) {
      // Uniform downward rate between every pair of levels.
      const double g = number(rates, where + ".base_rates");
      const Eigen::Index d = p.omegas.size();
      p.base_rates = RealMatrix::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) p.base_rates(i, j) = g;
    } else {
      p.base_rates = real_rows(rates, where + ".base_rates");
    }
  } else if (type == "custom-gksl") {
    sc.model_kind = ModelKind::kCustom;
  } else {
    fail(where + ".type", "unknown model '" + type + "' (qubit, multilevel, custom-gksl)");
  }
}

void build_model(const json& node, Scenario& sc) {
  const std::string where = "model";
  switch (sc.model_kind) {
    case ModelKind::kQubit:
      sc.qubit.dt = sc.strob.dt;
      sc.generator = qubit_generator(sc.qubit);
      sc.gibbs_hamiltonian = qubit_gibbs_hamiltonian(sc.qubit);
      break;
    case ModelKind::kMultilevel:
      sc.generator = multilevel_generator(sc.multilevel);
      sc.gibbs_hamiltonian = multilevel_gibbs_hamiltonian(sc.multilevel);
      break;
    case ModelKind::kCustom: {
      const ComplexMatrix h = parse_matrix(require(node, "hamiltonian", where), where + ".hamiltonian");
      std::vector<JumpOperator> jumps;
      if (node.contains("jumps")) {
        const json& js = node.at("jumps");
        if (!js.is_array()) fail(where + ".jumps", "expected a list");
        for (std::size_t k = 0; k < js.size(); ++k) {
          const std::string jw = where + ".jumps[" + std::to_string(k) + "]";
          jumps.push_back({parse_matrix(require(js[k], "op", jw), jw + ".op"), number_at(js[k], "rate", jw)});
        }
      }
      sc.generator = GkslGenerator(h, std::move(jumps));
      sc.gibbs_hamiltonian =
          node.contains("gibbs_hamiltonian")
              ? parse_matrix(node.at("gibbs_hamiltonian"), where + ".gibbs_hamiltonian")
              : h;
      break;
    }
  }
}

ComplexMatrix observable_ref(const json& node, const Scenario& sc, const std::string& where) {
  if (node.is_string()) {
    if (node.get<std::string>() != "hamiltonian") fail(where, "the only named observable is 'hamiltonian'");
    return sc.gibbs_hamiltonian;
  }
  return parse_matrix(node, where);
}

void build_ansatz(const json& node, Scenario& sc) {
  const std::string where = "ansatz";
  const std::string type = string_at(node, "type", where);
  if (type == "gibbs-canonical" || type == "gibbs-generalized") {
    std::vector<ComplexMatrix> ps;
    if (type == "gibbs-canonical") {
      sc.ansatz_kind = AnsatzKind::kGibbsCanonical;
      ps.push_back(sc.gibbs_hamiltonian);
    } else {
      sc.ansatz_kind = AnsatzKind::kGibbsGeneralized;
      const json& list = require(node, "observables", where);
      if (!list.is_array() || list.empty()) fail(where + ".observables", "expected a non-empty list");
      for (std::size_t k = 0; k < list.size(); ++k)
        ps.push_back(observable_ref(list[k], sc, where + ".observables[" + std::to_string(k) + "]"));
    }
    FitOptions opts;
    opts.tol = number_or(node, "fit_tol", opts.tol, where);
    auto g = std::make_shared<GibbsAnsatz>(RelevantSet(std::move(ps)), opts);
    sc.gibbs = g.get();
    sc.family = std::move(g);
  } else if (type == "pinching") {
    sc.ansatz_kind = AnsatzKind::kPinching;
    sc.family = std::make_shared<LinearAnsatz>(
        pinching_ansatz(observable_ref(require(node, "observable", where), sc, where + ".observable")));
  } else if (type == "selective") {
    sc.ansatz_kind = AnsatzKind::kSelective;
    sc.family = std::make_shared<SelectiveAnsatz>(selective_ansatz(
        observable_ref(require(node, "observable", where), sc, where + ".observable"),
        number_at(node, "outcome", where)));
  } else if (type == "factorized") {
    sc.ansatz_kind = AnsatzKind::kFactorized;
    const json& ds = require(node, "d_system", where);
    const json& db = require(node, "d_bath", where);
    if (!ds.is_number_unsigned() || !db.is_number_unsigned()) fail(where, "d_system and d_bath are positive integers");
    const ComplexMatrix bath = parse_matrix(require(node, "bath_state", where), where + ".bath_state");
    sc.family = std::make_shared<LinearAnsatz>(
        factorized_ansatz(DensityMatrix(bath), ds.get<std::size_t>(), db.get<std::size_t>()));
  } else {
    fail(where + ".type", "unknown ansatz '" + type + "'");
  }
  if (sc.family->dim() != sc.generator.dim()) fail(where, "ansatz and model dimensions differ");
}

Protocol parse_protocol(const json& node, const std::string& where) {
  if (!node.is_string()) fail(where, "expected a protocol name");
  const std::string s = node.get<std::string>();
  if (s == "discrete") return Protocol::kDiscrete;
  if (s == "ode1") return Protocol::kOde1;
  if (s == "ode2") return Protocol::kOde2;
  if (s == "ode-temperature") return Protocol::kOdeTemperature;
  if (s == "closed-form") return Protocol::kClosedForm;
  fail(where, "unknown protocol '" + s + "' (discrete, ode1, ode2, ode-temperature, closed-form)");
}

bool integral_ratio(double num, double den) {
  const double r = num / den;
  return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, r);
}

void parse_strob(const json& node, Scenario& sc) {
  const std::string where = "strob";
  const double lambda = number_or(node, "lambda", 1.0, where);
  const double dt = number_at(node, "dt", where);
  const double horizon = number_at(node, "T", where);
  std::optional<double> h;
  if (node.contains("h")) h = number_at(node, "h", where);
  try {
    sc.strob = StrobConfig::make(lambda, dt, horizon, h);
  } catch (const ValidationError& err) {
    fail(where, err.what());
  }
  if (node.contains("alpha")) {
    const double alpha = number_at(node, "alpha", where);
    if (std::abs(alpha - sc.strob.alpha) > 1e-12 * std::max(1.0, std::abs(alpha))) {
      fail(where + ".alpha", "must equal lambda^2 * dt");
    }
  }
  if (sc.strob.ode_step > dt * (1.0 + 1e-12)) fail(where + ".h", "ODE step must not exceed dt");
  if (!integral_ratio(horizon, dt)) fail(where, "T must be a whole number of dt steps");
  if (!integral_ratio(dt, sc.strob.ode_step)) fail(where, "dt must be a whole number of ODE steps h");
  if (node.contains("dt_ladder")) {
    const RealVector ladder = vector_of(node.at("dt_ladder"), where + ".dt_ladder");
    for (Eigen::Index i = 0; i < ladder.size(); ++i) {
      const double step = ladder(i);
      if (!(step > 0.0)) fail(where + ".dt_ladder", "entries must be positive");
      if (!integral_ratio(horizon, step)) fail(where + ".dt_ladder", "T must be a whole number of each dt");
      if (sc.strob.ode_step > step * (1.0 + 1e-12) || !integral_ratio(step, sc.strob.ode_step)) {
        fail(where + ".dt_ladder", "each dt must be a whole number of ODE steps h");
      }
      sc.dt_ladder.push_back(step);
    }
  }
}

void parse_initial(const json& node, Scenario& sc) {
  const std::string where = "initial";
  if (node.contains("E") == node.contains("beta")) fail(where, "give exactly one of 'E' or 'beta'");
  if (node.contains("E")) {
    sc.initial_e = vector_of(node.at("E"), where + ".E");
    if (static_cast<std::size_t>(sc.initial_e->size()) != sc.family->size()) {
      fail(where + ".E", "expected " + std::to_string(sc.family->size()) + " entries");
    }
  } else {
    if (!sc.gibbs) fail(where + ".beta", "an initial beta requires a Gibbs ansatz");
    sc.initial_beta = vector_of(node.at("beta"), where + ".beta");
    if (static_cast<std::size_t>(sc.initial_beta->size()) != sc.family->size()) {
      fail(where + ".beta", "expected " + std::to_string(sc.family->size()) + " entries");
    }
  }
}

void check_protocols(Scenario& sc) {
  std::set<Protocol> seen;
  for (Protocol p : sc.protocols) {
    if (!seen.insert(p).second) fail("protocols", std::string("duplicate '") + to_string(p) + "'");
    if (p == Protocol::kClosedForm) {
      if (sc.model_kind != ModelKind::kQubit || sc.ansatz_kind != AnsatzKind::kGibbsCanonical) {
        fail("protocols", "closed-form needs the qubit model with the gibbs-canonical ansatz");
      }
      if (sc.strob.lambda != 1.0) fail("protocols", "closed-form assumes lambda = 1");
    }
    if (p == Protocol::kOdeTemperature && sc.ansatz_kind != AnsatzKind::kGibbsCanonical) {
      fail("protocols", "ode-temperature needs the gibbs-canonical ansatz");
    }
  }
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ConfigError("scenario: top level must be an object");
  Scenario sc;
  sc.name = doc.contains("name") ? string_at(doc, "name", "scenario") : "scenario";
  if (sc.name.empty() || sc.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("name: must be a non-empty file-name stem");
  }
  try {
    const json& model = require(doc, "model", "scenario");
    parse_model(model, sc);
    parse_strob(require(doc, "strob", "scenario"), sc);
    build_model(model, sc);
    build_ansatz(require(doc, "ansatz", "scenario"), sc);

    if (doc.contains("protocols")) {
      const json& ps = doc.at("protocols");
      if (!ps.is_array()) throw ConfigError("protocols: expected a list");
      for (std::size_t i = 0; i < ps.size(); ++i)
        sc.protocols.push_back(parse_protocol(ps[i], "protocols[" + std::to_string(i) + "]"));
    }
    check_protocols(sc);

    if (doc.contains("initial")) parse_initial(doc.at("initial"), sc);
    if (doc.contains("closed_form")) {
      sc.drive_coefficient =
          number_or(doc.at("closed_form"), "drive_coefficient", sc.drive_coefficient, "closed_form");
    }
    if (doc.contains("cross_checks")) {
      const json& cc = doc.at("cross_checks");
      sc.cross_check_finite_difference = bool_or(cc, "finite_difference", false, "cross_checks");
      sc.cross_check_analytic = bool_or(cc, "generic_vs_analytic", false, "cross_checks");
      if (sc.cross_check_analytic &&
          (sc.model_kind == ModelKind::kCustom || sc.ansatz_kind != AnsatzKind::kGibbsCanonical)) {
        throw ConfigError(
            "cross_checks.generic_vs_analytic: needs a qubit or multilevel model with the "
            "gibbs-canonical ansatz");
      }
    }
    if (doc.contains("fit")) {
      const json& f = doc.at("fit");
      if (f.contains("target")) sc.fit.target = vector_of(f.at("target"), "fit.target");
      if (f.contains("trajectory")) sc.fit.trajectory_path = string_at(f, "trajectory", "fit");
      if (f.contains("tail")) {
        if (!f.at("tail").is_number_unsigned() || f.at("tail").get<int>() < 1) {
          throw ConfigError("fit.tail: expected a positive integer");
        }
        sc.fit.tail = f.at("tail").get<int>();
      }
    }
  } catch (const ValidationError& err) {
    throw ConfigError(err.what());
  } catch (const CapacityError& err) {
    throw ConfigError(err.what());
  } catch (const DomainError& err) {
    throw ConfigError(err.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& err) {
    throw ConfigError("scenario file '" + path + "': " + err.what());
  }
  Scenario sc = parse_scenario(doc);
  sc.base_dir = std::filesystem::path(path).parent_path().string();
  return sc;
}

}  // namespace strobotherm::cli
