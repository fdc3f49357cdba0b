#include "macrostab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "macrostab/catalog.hpp"
#include "macrostab/error.hpp"

namespace macrostab {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& message) { fail(ErrorKind::kValidation, message); }

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) invalid(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) invalid("unknown key '" + item.key() + "' in " + where);
  }
}

double get_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) invalid("'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid("'" + key + "' must be finite");
  return d;
}

std::int64_t get_integer(const json& obj, const std::string& key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) invalid("'" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) invalid("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> get_string_list(const json& obj, const std::string& key) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  const json& v = obj.at(key);
  if (!v.is_array()) invalid("'" + key + "' must be a list of strings");
  for (const json& item : v) {
    if (!item.is_string()) invalid("'" + key + "' must be a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

// Converts a module parse error (kArgument) into a validation error.
template <typename F>
auto as_validation(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSize) throw;
    invalid(e.what());
  }
}

void check_open_unit(double v, const std::string& name) {
  if (!(v > 0.0 && v < 1.0)) invalid(name + " must lie in (0, 1)");
}

bool needs_states(const Scenario& s) {
  return s.has(Experiment::kClassify) || s.has(Experiment::kCluster) ||
         s.has(Experiment::kMeasure) || s.has(Experiment::kDecohere);
}

}  // namespace

const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::kClassify: return "classify";
    case Experiment::kCluster: return "cluster";
    case Experiment::kMeasure: return "measure";
    case Experiment::kDecohere: return "decohere";
    case Experiment::kGround: return "ground";
    case Experiment::kSymmetryBreaking: return "symmetry-breaking";
  }
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  for (Experiment e : {Experiment::kClassify, Experiment::kCluster, Experiment::kMeasure,
                       Experiment::kDecohere, Experiment::kGround, Experiment::kSymmetryBreaking}) {
    if (name == to_string(e)) return e;
  }
  fail(ErrorKind::kValidation, "unknown experiment '" + name + "'");
}

const char* to_string(NoiseAxis axis) noexcept {
  switch (axis) {
    case NoiseAxis::kX: return "x";
    case NoiseAxis::kY: return "y";
    case NoiseAxis::kZ: return "z";
    case NoiseAxis::kOptimal: return "optimal";
  }
  return "?";
}

NoiseAxis parse_noise_axis(const std::string& name) {
  for (NoiseAxis a : {NoiseAxis::kX, NoiseAxis::kY, NoiseAxis::kZ, NoiseAxis::kOptimal}) {
    if (name == to_string(a)) return a;
  }
  fail(ErrorKind::kValidation, "unknown noise axis '" + name + "'");
}

TrajectoryGrid trajectory_grid(const ScenarioParams& params, const NoiseModel& noise) {
  const double scale = noise.kappa * noise.lattice.n_sites * noise.kernel_lambda_max();
  TrajectoryGrid g;
  g.horizon = params.horizon.value_or(0.5 / scale);
  g.dt = params.dt.value_or(g.horizon / kDefaultTrajectorySteps);
  return g;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  const auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) invalid("bad size '" + s + "' in '" + text + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (true) {
      const auto colon = text.find(':', pos);
      parts.push_back(to_int(text.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos)));
      if (colon == std::string::npos) break;
      pos = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) invalid("sizes must look like a:b or a:b:step");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step <= 0 || parts[1] < parts[0]) invalid("sizes range '" + text + "' is empty");
    for (int n = parts[0]; n <= parts[1]; n += step) out.push_back(n);
    return out;
  }
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(to_int(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool Scenario::has(Experiment e) const {
  return std::find(experiments.begin(), experiments.end(), e) != experiments.end();
}

LatticeSpec Scenario::lattice(int n_sites) const {
  return LatticeSpec::chain(n_sites, geometry, max_sites);
}

Scenario Scenario::from_json(const json& doc) {
  require_keys(doc, "scenario",
               {"name", "states", "catalog", "sizes", "geometry", "max_sites", "experiments",
                "parameters", "output"});
  Scenario s;
  s.name = get_string(doc, "name", s.name);
  s.states = get_string_list(doc, "states");
  if (doc.contains("catalog")) {
    if (!doc.at("catalog").is_boolean()) invalid("'catalog' must be a boolean");
    if (doc.at("catalog").get<bool>()) {
      for (const std::string& c : standard_catalog()) s.states.push_back(c);
    }
  }
  if (!doc.contains("sizes")) invalid("scenario needs 'sizes'");
  const json& sizes = doc.at("sizes");
  if (sizes.is_string()) {
    s.sizes = parse_sizes(sizes.get<std::string>());
  } else if (sizes.is_array()) {
    for (const json& v : sizes) {
      if (!v.is_number_integer()) invalid("'sizes' must hold integers");
      s.sizes.push_back(v.get<int>());
    }
  } else {
    invalid("'sizes' must be a list of integers or an 'a:b:step' string");
  }
  const std::string geometry = get_string(doc, "geometry", "open");
  if (geometry == "open") {
    s.geometry = Geometry::kOpenChain;
  } else if (geometry == "periodic") {
    s.geometry = Geometry::kPeriodicChain;
  } else {
    invalid("geometry must be 'open' or 'periodic'");
  }
  s.max_sites = static_cast<int>(get_integer(doc, "max_sites", kDefaultMaxSites));
  for (const std::string& e : get_string_list(doc, "experiments")) {
    s.experiments.push_back(parse_experiment(e));
  }

  if (doc.contains("parameters")) {
    const json& p = doc.at("parameters");
    require_keys(p, "parameters",
                 {"epsilon", "epsilon_measure", "varepsilon", "min_distance", "kappa", "kernels",
                  "axis", "xi", "n_traj", "dt", "horizon", "seed", "model", "J", "h", "delta", "B",
                  "method"});
    ScenarioParams& q = s.params;
    q.epsilon = get_number(p, "epsilon", q.epsilon);
    q.epsilon_measure = get_number(p, "epsilon_measure", q.epsilon_measure);
    q.varepsilon = get_number(p, "varepsilon", q.varepsilon);
    if (p.contains("min_distance")) q.min_distance = static_cast<int>(get_integer(p, "min_distance", 0));
    q.kappa = get_number(p, "kappa", q.kappa);
    if (p.contains("kernels")) {
      q.kernels.clear();
      for (const std::string& k : get_string_list(p, "kernels")) {
        q.kernels.push_back(as_validation([&] { return parse_kernel(k); }));
      }
    }
    q.axis = parse_noise_axis(get_string(p, "axis", to_string(q.axis)));
    q.xi = get_number(p, "xi", q.xi);
    q.n_traj = static_cast<int>(get_integer(p, "n_traj", q.n_traj));
    if (p.contains("dt")) q.dt = get_number(p, "dt", 0.0);
    if (p.contains("horizon")) q.horizon = get_number(p, "horizon", 0.0);
    if (p.contains("seed")) {
      const json& v = p.at("seed");
      const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
      if (!ok) invalid("'seed' must be a non-negative integer");
      q.seed = v.get<std::uint64_t>();
    }
    if (p.contains("model")) {
      const std::string m = get_string(p, "model", "");
      q.model = as_validation([&] { return parse_model(m); });
    }
    q.J = get_number(p, "J", q.J);
    q.h = get_number(p, "h", q.h);
    q.delta = get_number(p, "delta", q.delta);
    q.B = get_number(p, "B", q.B);
    if (p.contains("method")) {
      const std::string m = get_string(p, "method", "");
      q.method = as_validation([&] { return parse_pure_phase_method(m); });
    }
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_keys(o, "output", {"report", "csv_dir"});
    s.report_path = get_string(o, "report", "");
    s.csv_dir = get_string(o, "csv_dir", "");
  }
  s.validate();
  return s;
}

Scenario Scenario::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    invalid("scenario file " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(doc);
}

json Scenario::to_json() const {
  json p = {
      {"epsilon", params.epsilon},
      {"epsilon_measure", params.epsilon_measure},
      {"varepsilon", params.varepsilon},
      {"kappa", params.kappa},
      {"axis", to_string(params.axis)},
      {"xi", params.xi},
      {"n_traj", params.n_traj},
      {"seed", params.seed},
      {"model", to_string(params.model)},
      {"J", params.J},
      {"h", params.h},
      {"delta", params.delta},
      {"B", params.B},
      {"method", to_string(params.method)},
  };
  p["min_distance"] = params.min_distance ? json(*params.min_distance) : json("N/2");
  p["dt"] = params.dt ? json(*params.dt) : json("auto");
  p["horizon"] = params.horizon ? json(*params.horizon) : json("auto");
  json kernels = json::array();
  for (KernelShape k : params.kernels) kernels.push_back(to_string(k));
  p["kernels"] = kernels;
  json experiments = json::array();
  for (Experiment e : this->experiments) experiments.push_back(to_string(e));
  return {{"name", name},
          {"states", states},
          {"sizes", sizes},
          {"geometry", to_string(geometry)},
          {"max_sites", max_sites},
          {"experiments", experiments},
          {"parameters", p}};
}

void Scenario::validate() const {
  if (name.empty()) invalid("scenario name must not be empty");
  if (max_sites < 1 || max_sites > kHardMaxSites) {
    fail(ErrorKind::kSize, "max_sites must lie in [1, " + std::to_string(kHardMaxSites) + "]");
  }
  if (sizes.empty()) invalid("size list is empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0 && sizes[i] <= sizes[i - 1]) invalid("sizes must be strictly ascending");
    lattice(sizes[i]);  // kSize above the cap
  }
  if (experiments.empty()) invalid("no experiments requested");
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (experiments[i] == experiments[j]) {
        invalid(std::string("experiment '") + to_string(experiments[i]) + "' listed twice");
      }
    }
  }

  if (needs_states(*this)) {
    if (states.empty()) invalid("experiments need at least one state source");
    for (const std::string& text : states) {
      const StateSource source = StateSource::parse(text);
      for (int n : sizes) source.validate_for(lattice(n));
    }
  } else if (!states.empty()) {
    invalid("state sources given but no experiment uses them");
  }

  if (has(Experiment::kCluster)) check_open_unit(params.epsilon, "epsilon");
  if (has(Experiment::kMeasure)) {
    check_open_unit(params.epsilon_measure, "epsilon_measure");
    check_open_unit(params.varepsilon, "varepsilon");
    for (int n : sizes) {
      const int d = params.min_distance_for(n);
      if (n < 2) invalid("measure needs N >= 2");
      if (d < 1 || d >= n) {
        invalid("min_distance=" + std::to_string(d) + " must lie in [1, N) for N=" +
                std::to_string(n));
      }
      const LatticeSpec lat = lattice(n);
      if (lat.distance(0, n / 2) < d && lat.distance(0, n - 1) < d) {
        invalid("no site pair reaches min_distance=" + std::to_string(d) + " at N=" +
                std::to_string(n));
      }
    }
  }
  if (has(Experiment::kDecohere)) {
    if (!(params.kappa > 0.0)) invalid("kappa must be > 0");
    if (params.kernels.empty()) invalid("no noise kernels requested");
    if (!(params.xi > 0.0)) invalid("xi must be > 0");
    if (params.n_traj != 0 && params.n_traj < kMinTrajectories) {
      invalid("n_traj must be 0 (analytic only) or >= " + std::to_string(kMinTrajectories));
    }
    if (params.dt && !(*params.dt > 0.0)) invalid("dt must be > 0");
    if (params.horizon && !(*params.horizon > 0.0)) invalid("horizon must be > 0");
    for (int n : sizes) {
      for (KernelShape k : params.kernels) {
        const NoiseModel noise = as_validation(
            [&] { return NoiseModel::along_axis(lattice(n), Axis::kZ, params.kappa, k, params.xi); });
        if (params.n_traj == 0) continue;
        const TrajectoryGrid g = trajectory_grid(params, noise);
        const double bound = max_stable_dt(noise);
        if (g.dt > bound * (1.0 + 1e-12)) {
          invalid("N=" + std::to_string(n) + ", " + to_string(k) + " kernel: dt=" +
                  std::to_string(g.dt) + " violates the stability bound " + std::to_string(bound));
        }
        if (std::llround(g.horizon / g.dt) < 3) {
          invalid("N=" + std::to_string(n) + ": horizon must span at least 3 steps");
        }
      }
    }
  }
  if (has(Experiment::kGround) || has(Experiment::kSymmetryBreaking)) {
    for (double v : {params.J, params.h, params.delta, params.B}) {
      if (!std::isfinite(v)) invalid("Hamiltonian couplings must be finite");
    }
    for (int n : sizes) {
      if (n < 2) invalid("Hamiltonian experiments need N >= 2");
    }
  }
  if (has(Experiment::kSymmetryBreaking)) {
    if (params.model != Model::kTransverseIsing) {
      invalid("symmetry-breaking needs the transverse-ising model");
    }
    if (params.B != 0.0) invalid("symmetry-breaking compares states of the B = 0 Hamiltonian");
    if (!(params.kappa > 0.0)) invalid("kappa must be > 0");
  }
}

}  // namespace macrostab
