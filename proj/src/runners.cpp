#include "macrostab/runners.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "macrostab/analyzer.hpp"
#include "macrostab/catalog.hpp"
#include "macrostab/cluster.hpp"
#include "macrostab/error.hpp"
#include "macrostab/measure.hpp"
#include "macrostab/rng.hpp"

namespace macrostab {
namespace {

using nlohmann::json;

std::string cell(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string cell(int v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "true" : "false"; }
std::string cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string quoted = "\"";
  for (char c : v) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}
std::string cell(const char* v) { return cell(std::string(v)); }

class CsvTable {
 public:
  explicit CsvTable(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }
  template <typename... T>
  void row(const T&... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(values), first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename F>
auto with_context(const std::string& context, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), context + ": " + e.detail());
  }
}

std::string cell_context(const std::string& experiment, const std::string& state, int n) {
  return experiment + " [state " + state + ", N=" + std::to_string(n) + "]";
}

// States are built once per (source, size) and shared by all experiments.
class StateCache {
 public:
  explicit StateCache(const Scenario& scenario) : scenario_(scenario) {}

  const StateVector& get(const std::string& source, int n) {
    const auto key = std::make_pair(source, n);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      StateVector psi = with_context("state " + source + ", N=" + std::to_string(n), [&] {
        return StateSource::parse(source).build(scenario_.lattice(n));
      });
      it = cache_.emplace(key, std::move(psi)).first;
    }
    return it->second;
  }

 private:
  const Scenario& scenario_;
  std::map<std::pair<std::string, int>, StateVector> cache_;
};

Report classify_impl(const Scenario& s, StateCache& cache) {
  Report r;
  CsvTable table{"state", "N", "max_variance", "lambda_max", "reconstructed_variance"};
  json states = json::array();
  for (const std::string& source : s.states) {
    json per_size = json::array();
    std::vector<SizePoint> points;
    for (int n : s.sizes) {
      const FluctuationReport f = with_context(cell_context("classify", source, n), [&] {
        return max_additive_fluctuation(cache.get(source, n));
      });
      points.push_back({n, f.max_variance});
      per_size.push_back({{"N", n},
                          {"max_variance", f.max_variance},
                          {"lambda_max", f.lambda_max},
                          {"reconstructed_variance", f.reconstructed_variance},
                          {"normal_fluctuation", has_normal_fluctuation(f)}});
      table.row(source, n, f.max_variance, f.lambda_max, f.reconstructed_variance);
    }
    json entry = {{"state", source}, {"per_size", per_size}};
    if (distinct_sizes(points) >= 3) {
      const ScalingVerdict v = classify_scaling(points);
      entry["verdict"] = {{"class", to_string(v.verdict)},
                          {"exponent", number_or_null(v.exponent)},
                          {"intercept", number_or_null(v.intercept)},
                          {"residual", v.residual},
                          {"afs_threshold", kAfsExponentThreshold},
                          {"nfs_threshold", kNfsExponentThreshold}};
    } else {
      entry["verdict"] = nullptr;
      entry["note"] = "fewer than 3 sizes; no scaling fit";
    }
    states.push_back(entry);
  }
  r.body = {{"states", states}};
  r.csv["classify"] = table.str();
  return r;
}

Report cluster_impl(const Scenario& s, StateCache& cache) {
  Report r;
  CsvTable table{"state", "N", "omega"};
  CsvTable rho_table{"state", "N", "x", "y", "rho"};
  json states = json::array();
  for (const std::string& source : s.states) {
    json per_size = json::array();
    std::vector<OmegaPoint> points;
    for (int n : s.sizes) {
      const CorrelationField field = with_context(cell_context("cluster", source, n), [&] {
        return correlation_field(cache.get(source, n));
      });
      const ClusterReport c = omega(field, s.params.epsilon);
      points.push_back({n, c.omega});
      json rho = json::array();
      for (int x = 0; x < n; ++x) {
        json row = json::array();
        for (int y = 0; y < n; ++y) {
          row.push_back(field.rho(x, y));
          rho_table.row(source, n, x, y, field.rho(x, y));
        }
        rho.push_back(row);
      }
      per_size.push_back({{"N", n}, {"omega", c.omega}, {"omega_of_x", c.omega_of_x}, {"rho", rho}});
      table.row(source, n, c.omega);
    }
    json entry = {{"state", source}, {"epsilon", s.params.epsilon}, {"per_size", per_size}};
    if (points.size() >= 3) {
      const ClusterVerdict v = cluster_verdict(points);
      entry["verdict"] = {{"has_cluster_property", v.has_cluster_property}, {"rule", v.rule}};
    } else {
      entry["verdict"] = nullptr;
      entry["note"] = "fewer than 3 sizes; no cluster verdict";
    }
    states.push_back(entry);
  }
  r.body = {{"states", states}};
  r.csv["cluster"] = table.str();
  r.csv["cluster_rho"] = rho_table.str();
  return r;
}

json vector_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Report measure_impl(const Scenario& s, StateCache& cache) {
  Report r;
  CsvTable table{"state", "N", "distance", "max_deviation"};
  CsvTable pairs_table{"state", "N", "x", "y", "distance", "n_x", "n_y", "n_z", "m_x", "m_y",
                       "m_z", "a", "b", "p_a", "p_b_given_a", "p_b", "deviation"};
  json states = json::array();
  for (const std::string& source : s.states) {
    json per_size = json::array();
    std::vector<bool> stable;
    for (int n : s.sizes) {
      const StabilityParams params{s.params.epsilon_measure, s.params.varepsilon,
                                   s.params.min_distance_for(n)};
      const MeasurementStabilityReport rep =
          with_context(cell_context("measure", source, n),
                       [&] { return stability_test(cache.get(source, n), params); });
      stable.push_back(rep.stable);
      json by_distance = json::array();
      for (std::size_t d = 1; d < rep.max_deviation_at_distance.size(); ++d) {
        const double v = rep.max_deviation_at_distance[d];
        by_distance.push_back(v < 0.0 ? json(nullptr) : json(v));
        if (v >= 0.0) table.row(source, n, static_cast<int>(d), v);
      }
      const PairDeviation* best = nullptr;
      for (const PairDeviation& p : rep.pairs) {
        pairs_table.row(source, n, p.x, p.y, p.distance, p.n.x(), p.n.y(), p.n.z(), p.m.x(),
                        p.m.y(), p.m.z(), p.a, p.b, p.p_a, p.p_b_given_a, p.p_b, p.deviation);
        if (p.distance >= params.min_distance && (best == nullptr || p.deviation > best->deviation)) {
          best = &p;
        }
      }
      json worst = nullptr;
      if (best != nullptr) {
        worst = {{"x", best->x},         {"y", best->y},
                 {"n", vector_json(best->n)}, {"m", vector_json(best->m)},
                 {"a", best->a},         {"b", best->b},
                 {"p_a", best->p_a},     {"p_b_given_a", best->p_b_given_a},
                 {"p_b", best->p_b},     {"deviation", best->deviation}};
      }
      per_size.push_back({{"N", n},
                          {"min_distance", params.min_distance},
                          {"max_deviation", rep.max_deviation},
                          {"max_deviation_at_distance", by_distance},
                          {"worst_pair", worst},
                          {"stable", rep.stable}});
    }
    const std::size_t from = stable.size() >= 2 ? stable.size() - 2 : 0;
    bool family_stable = true;
    for (std::size_t i = from; i < stable.size(); ++i) family_stable = family_stable && stable[i];
    states.push_back({{"state", source},
                      {"epsilon_measure", s.params.epsilon_measure},
                      {"varepsilon", s.params.varepsilon},
                      {"per_size", per_size},
                      {"verdict", {{"stable", family_stable}, {"rule", kMeasureFamilyRule}}}});
  }
  r.body = {{"states", states}};
  r.csv["measure"] = table.str();
  r.csv["measure_pairs"] = pairs_table.str();
  return r;
}

// Rates at or below this multiple of kappa N count as zero.
constexpr double kZeroRate = 1e-9;

json gamma_fit_json(const std::vector<SizePoint>& points, double kappa, bool& fragile) {
  fragile = false;
  if (points.size() < 3) return {{"fit", nullptr}, {"note", "fewer than 3 sizes; no scaling fit"}};
  std::size_t zero = 0;
  for (const SizePoint& p : points) {
    if (!(p.value > kZeroRate * kappa * p.n_sites)) ++zero;
  }
  if (zero == points.size()) return {{"fit", nullptr}, {"note", "rate vanishes at every size"}};
  if (zero > 0) return {{"fit", nullptr}, {"note", "rate vanishes at some sizes; no scaling fit"}};
  const DecoherenceFit f = fit_gamma_scaling(points);
  fragile = f.fragile;
  return {{"fit",
           {{"K", f.K},
            {"one_plus_delta", f.one_plus_delta},
            {"residual", f.residual},
            {"fragile", f.fragile},
            {"fragile_threshold", kFragileExponent}}}};
}

Report decohere_impl(const Scenario& s, StateCache& cache) {
  Report r;
  CsvTable table{"state", "kernel", "N", "gamma_analytic", "gamma_trajectory", "std_error"};
  CsvTable fidelity{"state", "kernel", "N", "t", "F_mean", "F_stderr"};
  json states = json::array();
  std::uint64_t cell_index = 0;
  for (const std::string& source : s.states) {
    json kernels = json::array();
    for (KernelShape kernel : s.params.kernels) {
      json per_size = json::array();
      std::vector<SizePoint> analytic, trajectory;
      for (int n : s.sizes) {
        ++cell_index;
        const std::string ctx = cell_context(std::string("decohere/") + to_string(kernel), source, n);
        with_context(ctx, [&] {
          const StateVector& psi = cache.get(source, n);
          const LatticeSpec lat = s.lattice(n);
          const NoiseModel noise =
              s.params.axis == NoiseAxis::kOptimal
                  ? NoiseModel::along_operator(max_additive_fluctuation(psi).optimal_operator(lat),
                                               s.params.kappa, kernel, s.params.xi)
                  : NoiseModel::along_axis(lat, static_cast<Axis>(static_cast<int>(s.params.axis)),
                                           s.params.kappa, kernel, s.params.xi);
          const double gamma = analytic_dephasing_rate(psi, noise);
          analytic.push_back({n, gamma});
          json entry = {{"N", n}, {"gamma_analytic", gamma}, {"trajectory", nullptr}};
          double g_traj = std::numeric_limits<double>::quiet_NaN();
          double g_err = std::numeric_limits<double>::quiet_NaN();
          if (s.params.n_traj > 0) {
            const TrajectoryGrid grid = trajectory_grid(s.params, noise);
            TrajectoryConfig config;
            config.n_traj = s.params.n_traj;
            config.dt = grid.dt;
            config.horizon = grid.horizon;
            config.seed = s.params.seed + 0x9e3779b97f4a7c15ULL * cell_index;
            const FidelitySeries series = evolve_noisy(psi, nullptr, noise, config);
            const RateEstimate est = estimate_initial_rate(series);
            g_traj = est.gamma;
            g_err = est.std_error;
            trajectory.push_back({n, est.gamma});
            entry["trajectory"] = {{"gamma", est.gamma},
                                   {"std_error", est.std_error},
                                   {"n_points", est.n_points},
                                   {"window", est.window},
                                   {"dt", config.dt},
                                   {"horizon", config.horizon},
                                   {"n_traj", config.n_traj},
                                   {"max_norm_drift", series.max_norm_drift}};
            for (std::size_t k = 0; k < series.time.size(); ++k) {
              fidelity.row(source, to_string(kernel), n, series.time[k], series.mean[k],
                           series.std_error[k]);
            }
          }
          table.row(source, to_string(kernel), n, gamma, g_traj, g_err);
          per_size.push_back(entry);
          return 0;
        });
      }
      bool fragile_analytic = false, fragile_trajectory = false;
      json fit_a = gamma_fit_json(analytic, s.params.kappa, fragile_analytic);
      json entry = {{"kernel", to_string(kernel)}, {"per_size", per_size}, {"analytic", fit_a}};
      bool fragile = fragile_analytic;
      if (!trajectory.empty()) {
        entry["trajectory"] = gamma_fit_json(trajectory, s.params.kappa, fragile_trajectory);
        fragile = fragile_trajectory;
      }
      entry["fragile"] = fragile;
      entry["fragile_source"] = trajectory.empty() ? "analytic" : "trajectory";
      kernels.push_back(entry);
    }
    states.push_back({{"state", source}, {"kernels", kernels}});
  }
  r.body = {{"kappa", s.params.kappa},
            {"axis", to_string(s.params.axis)},
            {"xi", s.params.xi},
            {"rate_convention",
             "initial slope of -ln F, F = <psi0|rho(t)|psi0>, weighted fit over the first 5% of "
             "the horizon"},
            {"states", states}};
  r.csv["decohere"] = table.str();
  if (s.params.n_traj > 0) r.csv["decohere_fidelity"] = fidelity.str();
  return r;
}

HamiltonianSpec hamiltonian_spec(const Scenario& s, int n) {
  return HamiltonianSpec{s.params.model, s.lattice(n), s.params.J, s.params.h, s.params.delta,
                         s.params.B};
}

Report ground_impl(const Scenario& s) {
  Report r;
  CsvTable table{"N", "level", "energy", "sector", "residual", "magnetization"};
  json per_size = json::array();
  for (int n : s.sizes) {
    with_context("ground [N=" + std::to_string(n) + "]", [&] {
      const Hamiltonian h(hamiltonian_spec(s, n));
      const std::vector<Eigenpair> pairs = ground_state(h, Which::kLowestTwo);
      json levels = json::array();
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const Eigenpair& p = pairs[k];
        const double m = magnetization(p.state);
        levels.push_back({{"energy", p.energy},
                          {"sector", to_string(p.sector)},
                          {"residual", p.residual},
                          {"magnetization", m},
                          {"iterations", p.iterations}});
        table.row(n, static_cast<int>(k), p.energy, to_string(p.sector), p.residual, m);
      }
      per_size.push_back({{"N", n}, {"levels", levels}});
      return 0;
    });
  }
  r.body = {{"model", to_string(s.params.model)},
            {"J", s.params.J},
            {"h", s.params.h},
            {"delta", s.params.delta},
            {"B", s.params.B},
            {"per_size", per_size}};
  r.csv["ground"] = table.str();
  return r;
}

struct StateSummary {
  double energy;
  double magnetization;
  double max_variance;
  double gamma_collective;
};

StateSummary summarize(const Hamiltonian& h, const StateVector& psi, double kappa) {
  const NoiseModel noise =
      NoiseModel::along_axis(psi.lattice(), Axis::kZ, kappa, KernelShape::kCollective);
  return {h.expectation(psi), magnetization(psi), max_additive_fluctuation(psi).max_variance,
          analytic_dephasing_rate(psi, noise)};
}

json summary_json(const StateSummary& x) {
  return {{"energy", x.energy},
          {"magnetization", x.magnetization},
          {"max_variance", x.max_variance},
          {"gamma_collective", x.gamma_collective}};
}

Report symmetry_breaking_impl(const Scenario& s) {
  Report r;
  CsvTable table{"N", "E_sym", "E_pure", "M_sym", "M_pure", "var_sym", "var_pure", "gamma_sym",
                 "gamma_pure", "gamma_ratio", "cascade_steps"};
  CsvTable cascade_table{"N", "step", "site", "outcome", "probability", "max_variance", "nfs"};
  json per_size = json::array();
  bool energy_ordering = true;
  bool ratio_grows = true;
  double previous_ratio = -1.0;
  int worst_cascade = 0;
  bool warning = false;
  for (int n : s.sizes) {
    with_context("symmetry-breaking [N=" + std::to_string(n) + "]", [&] {
      const HamiltonianSpec spec = hamiltonian_spec(s, n);
      const Hamiltonian h(spec);
      const Eigenpair sym = lowest_eigenpair(h, Sector::kEven);
      const PurePhaseResult pure = pure_phase_vacuum(spec, s.params.method);
      warning = warning || pure.paramagnetic_warning;
      const StateSummary a = summarize(h, sym.state, s.params.kappa);
      const StateSummary b = summarize(h, pure.state, s.params.kappa);
      const double ratio = a.gamma_collective / b.gamma_collective;
      energy_ordering = energy_ordering && a.energy <= b.energy + 1e-10;
      ratio_grows = ratio_grows && ratio > previous_ratio;
      previous_ratio = ratio;

      // Measure sigma_z site by site; outcomes drawn from the counter stream
      // (seed, N), one draw per step.
      const NoiseStream rng(s.params.seed, static_cast<std::uint64_t>(n));
      StateVector current = sym.state;
      json cascade = json::array();
      int steps_to_nfs = -1;
      for (int site = 0; site < n; ++site) {
        const MeasurementOutcome m = measure_local(current, pauli(current.lattice(), site, Axis::kZ));
        const double u = rng.uniform(static_cast<std::uint32_t>(site), 0);
        const std::size_t pick = (u < m.probabilities[0] || !m.post_states[1]) ? 0 : 1;
        current = *m.post_states[pick];
        const FluctuationReport f = max_additive_fluctuation(current);
        const bool nfs = has_normal_fluctuation(f);
        const int outcome = pick == 0 ? 1 : -1;
        cascade.push_back({{"step", site + 1},
                           {"site", site},
                           {"outcome", outcome},
                           {"probability", m.probabilities[pick]},
                           {"max_variance", f.max_variance},
                           {"nfs", nfs}});
        cascade_table.row(n, site + 1, site, outcome, m.probabilities[pick], f.max_variance, nfs);
        if (nfs) {
          steps_to_nfs = site + 1;
          break;
        }
      }
      worst_cascade = steps_to_nfs < 0 ? -1 : (worst_cascade < 0 ? -1 : std::max(worst_cascade, steps_to_nfs));
      per_size.push_back({{"N", n},
                          {"symmetric", summary_json(a)},
                          {"symmetric_residual", sym.residual},
                          {"pure_phase", summary_json(b)},
                          {"energy_gap", b.energy - a.energy},
                          {"gamma_ratio", ratio},
                          {"cascade", cascade},
                          {"cascade_steps_to_nfs", steps_to_nfs < 0 ? json(nullptr) : json(steps_to_nfs)}});
      table.row(n, a.energy, b.energy, a.magnetization, b.magnetization, a.max_variance,
                b.max_variance, a.gamma_collective, b.gamma_collective, ratio,
                steps_to_nfs);
      return 0;
    });
  }
  r.body = {{"model", to_string(s.params.model)},
            {"J", s.params.J},
            {"h", s.params.h},
            {"kappa", s.params.kappa},
            {"pure_phase_method", to_string(s.params.method)},
            {"paramagnetic_warning", warning},
            {"nfs_rule", "max_variance <= 2 N"},
            {"per_size", per_size},
            {"verdicts",
             {{"symmetric_energy_not_above_pure_phase", energy_ordering},
              {"gamma_ratio_grows_with_N", ratio_grows},
              {"cascade_max_steps_to_nfs", worst_cascade < 0 ? json(nullptr) : json(worst_cascade)}}}};
  if (warning) r.body["warning"] = "h >= J: paramagnetic regime, pure-phase vacua are not meaningful";
  r.csv["symmetry_breaking"] = table.str();
  r.csv["symmetry_breaking_cascade"] = cascade_table.str();
  return r;
}

Report correspondence(const Report& cluster, const Report& measure) {
  Report r;
  CsvTable table{"state", "cluster_property", "measurement_stable", "agree"};
  json rows = json::array();
  bool all = true;
  const json& c = cluster.body.at("states");
  const json& m = measure.body.at("states");
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::string state = c[i].at("state");
    const bool stable = m[i].at("verdict").at("stable");
    if (c[i].at("verdict").is_null()) {
      rows.push_back({{"state", state}, {"cluster_property", nullptr}, {"measurement_stable", stable},
                      {"agree", nullptr}});
      table.row(state, "", stable, "");
      all = false;
      continue;
    }
    const bool cp = c[i].at("verdict").at("has_cluster_property");
    rows.push_back({{"state", state}, {"cluster_property", cp}, {"measurement_stable", stable},
                    {"agree", cp == stable}});
    table.row(state, cp, stable, cp == stable);
    all = all && cp == stable;
  }
  r.body = {{"states", rows}, {"all_agree", all}};
  r.csv["correspondence"] = table.str();
  return r;
}

Report run_one(Experiment e, const Scenario& s, StateCache& cache) {
  switch (e) {
    case Experiment::kClassify: return classify_impl(s, cache);
    case Experiment::kCluster: return cluster_impl(s, cache);
    case Experiment::kMeasure: return measure_impl(s, cache);
    case Experiment::kDecohere: return decohere_impl(s, cache);
    case Experiment::kGround: return ground_impl(s);
    case Experiment::kSymmetryBreaking: return symmetry_breaking_impl(s);
  }
  fail(ErrorKind::kInternal, "unhandled experiment");
}

Report run_single(Experiment e, const Scenario& s) {
  s.validate();
  StateCache cache(s);
  return run_one(e, s, cache);
}

}  // namespace

Report run_classify(const Scenario& s) { return run_single(Experiment::kClassify, s); }
Report run_cluster(const Scenario& s) { return run_single(Experiment::kCluster, s); }
Report run_measure(const Scenario& s) { return run_single(Experiment::kMeasure, s); }
Report run_decohere(const Scenario& s) { return run_single(Experiment::kDecohere, s); }
Report run_ground(const Scenario& s) { return run_single(Experiment::kGround, s); }
Report run_symmetry_breaking(const Scenario& s) {
  return run_single(Experiment::kSymmetryBreaking, s);
}

Report run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  s.validate();
  StateCache cache(s);
  Report out;
  out.body = {{"scenario", s.to_json()}};
  json results = json::object();
  std::map<Experiment, Report> done;
  for (Experiment e : s.experiments) {
    Report r = run_one(e, s, cache);
    results[to_string(e)] = r.body;
    for (auto& [name, text] : r.csv) out.csv[name] = text;
    done.emplace(e, std::move(r));
  }
  out.body["results"] = results;
  if (done.contains(Experiment::kCluster) && done.contains(Experiment::kMeasure)) {
    Report c = correspondence(done.at(Experiment::kCluster), done.at(Experiment::kMeasure));
    out.body["correspondence"] = c.body;
    for (auto& [name, text] : c.csv) out.csv[name] = text;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.body["provenance"] = {{"seed", s.params.seed}, {"version", kVersion}, {"wall_time_s", wall}};
  return out;
}

void write_report(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kArgument, "cannot write report to " + path.string());
  out << report.body.dump(2) << '\n';
}

void write_csv_tables(const Report& report, const std::string& scenario_name,
                      const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kArgument, "cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, text] : report.csv) {
    const auto path = dir / (scenario_name + "_" + name + ".csv");
    std::ofstream out(path);
    if (!out) fail(ErrorKind::kArgument, "cannot write " + path.string());
    out << text;
  }
}

int exit_code_for(const std::exception& error) noexcept {
  const auto* e = dynamic_cast<const Error*>(&error);
  if (e == nullptr) return 1;
  switch (e->kind()) {
    case ErrorKind::kValidation:
    case ErrorKind::kArgument:
    case ErrorKind::kFormat:
    case ErrorKind::kState:
    case ErrorKind::kModel: return 2;
    case ErrorKind::kNumerical: return 3;
    case ErrorKind::kSize:
    case ErrorKind::kCapability: return 4;
    case ErrorKind::kInternal: return 1;
  }
  return 1;
}

}  // namespace macrostab
