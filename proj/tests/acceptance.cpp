// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli_util.hpp"
#include "oracles.hpp"

#include "macrostab/analyzer.hpp"
#include "macrostab/catalog.hpp"
#include "macrostab/cluster.hpp"
#include "macrostab/dynamics.hpp"
#include "macrostab/eigensolver.hpp"
#include "macrostab/measure.hpp"
#include "macrostab/runners.hpp"
#include "macrostab/scenario.hpp"

using namespace macrostab;

namespace {

// Tolerances and budgets.
constexpr double kVarianceRelTol = 1e-9;
constexpr double kExponentTol = 0.02;
constexpr double kRhoTol = 1e-9;
constexpr double kRateRelTol = 1e-10;
constexpr double kTrajectoryRelTol = 0.05;
constexpr double kTrajectorySigmas = 3.0;
constexpr double kSlopeTol = 0.1;
constexpr double kTraceDistanceTol = 0.02;
constexpr double kDeviationTol = 1e-9;
constexpr double kEnergyTol = 1e-8;
constexpr double kMagnetizationTol = 1e-6;
constexpr double kEnergyOrderTol = 1e-10;

constexpr double kBudget1 = 5.0;
constexpr double kBudget2 = 30.0;
constexpr double kBudget3 = 60.0;
constexpr double kBudget4 = 300.0;
constexpr double kBudget5 = 600.0;
constexpr double kBudget5Analytic = 1.0;
constexpr double kBudget6 = 120.0;
constexpr double kBudget7 = 120.0;
constexpr double kBudget8 = 300.0;

constexpr double kKappa = 0.01;

LatticeSpec chain(int n) { return LatticeSpec::chain(n); }

StateVector plus_product(int n) {
  return make_product_state(chain(n), BlochAngles{std::numbers::pi / 2, 0.0});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Collects failure notes for one criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += " [fail: " + f + "]";
    for (const auto& n : notes_) out += " [" + n + "]";
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::string fmt(const char* format, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

std::string fmt(const char* format, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// Trajectory grid used throughout: 200 steps over 0.5 / (kappa N lambda_max).
TrajectoryConfig trajectory_config(const NoiseModel& noise, int n_traj, std::uint64_t seed) {
  TrajectoryConfig cfg;
  cfg.n_traj = n_traj;
  cfg.horizon = 5.0 * max_stable_dt(noise);
  cfg.dt = cfg.horizon / kDefaultTrajectorySteps;
  cfg.seed = seed;
  return cfg;
}

void criterion_1(Check& c) {
  for (int n = 3; n <= 12; ++n) {
    const double v = additive_variance(AdditiveOperator::uniform(chain(n), Axis::kZ),
                                       make_ghz(chain(n)));
    c.require(std::abs(v - n * n) <= kVarianceRelTol * n * n, fmt("GHZ N=%g variance %.12g", n, v));
  }
  for (int n = 3; n <= 12; ++n) {
    const auto M = AdditiveOperator::uniform(chain(n), Axis::kZ);
    const double up = additive_variance(M, make_basis_state(chain(n), 0));
    const double plus = additive_variance(M, plus_product(n));
    c.require(std::abs(up) <= kVarianceRelTol, fmt("all-up N=%g variance %.3g", n, up));
    c.require(std::abs(plus - n) <= kVarianceRelTol * n, fmt("all-plus N=%g variance %.12g", n, plus));
  }
}

void criterion_2(Check& c) {
  const std::vector<int> sizes{4, 6, 8, 10, 12};
  auto sweep = [&](const std::function<StateVector(int)>& make) {
    std::vector<SizePoint> pts;
    for (int n : sizes) pts.push_back({n, max_additive_fluctuation(make(n)).max_variance});
    return classify_scaling(pts);
  };
  const auto ghz = sweep([](int n) { return make_ghz(chain(n)); });
  c.require(std::abs(ghz.exponent - 2.0) <= kExponentTol && ghz.verdict == FluctuationClass::kAFS,
            fmt("GHZ exponent %.4f", ghz.exponent));
  const auto up = sweep([](int n) { return make_basis_state(chain(n), 0); });
  c.require(std::abs(up.exponent - 1.0) <= kExponentTol && up.verdict == FluctuationClass::kNFS,
            fmt("product-up exponent %.4f", up.exponent));
  const auto plus = sweep(plus_product);
  c.require(std::abs(plus.exponent - 1.0) <= kExponentTol && plus.verdict == FluctuationClass::kNFS,
            fmt("product-plus exponent %.4f", plus.exponent));
  const auto dicke = sweep([](int n) { return make_dicke(chain(n), n / 2); });
  c.note(fmt("GHZ %.4f, products %.4f", ghz.exponent, plus.exponent));
  c.note(std::string("Dicke(N,N/2) measured exponent ") + fmt("%.4f", dicke.exponent) + " " +
         to_string(dicke.verdict));
}

void criterion_3(Check& c) {
  std::vector<OmegaPoint> ghz_seq, prod_seq, tfim_seq;
  for (int n = 4; n <= 10; ++n) {
    const auto field = correlation_field(make_ghz(chain(n)));
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) worst = std::max(worst, std::abs(field.rho(x, y) - 1.0));
    }
    c.require(worst <= kRhoTol, fmt("GHZ N=%g rho off by %.3g", n, worst));
    const int w = omega(field, 0.1).omega;
    c.require(w == n - 1, fmt("GHZ N=%g Omega=%g", n, w));
    ghz_seq.push_back({n, w});
    const int p = omega(plus_product(n), 0.1).omega;
    c.require(p == 0, fmt("product N=%g Omega=%g", n, p));
    prod_seq.push_back({n, p});
  }
  c.require(!cluster_verdict(ghz_seq).has_cluster_property, "GHZ verdict TRUE");
  c.require(cluster_verdict(prod_seq).has_cluster_property, "product verdict FALSE");
  const auto tfim = StateSource::parse("tfim-ground:h=2");
  std::string omegas;
  for (int n : {8, 10, 12}) {
    const int w = omega(tfim.build(chain(n)), 0.1).omega;
    tfim_seq.push_back({n, w});
    omegas += std::to_string(w) + (n < 12 ? "," : "");
  }
  c.require(cluster_verdict(tfim_seq).has_cluster_property, "TFIM h=2J verdict FALSE");
  c.note("TFIM h=2J Omega(0.1) at N=8,10,12: " + omegas);
}

void criterion_4(Check& c) {
  for (int n = 4; n <= 10; ++n) {
    const auto ghz = make_ghz(chain(n));
    const double coll = analytic_dephasing_rate(
        ghz, NoiseModel::along_axis(chain(n), Axis::kZ, kKappa, KernelShape::kCollective));
    const double ind = analytic_dephasing_rate(
        ghz, NoiseModel::along_axis(chain(n), Axis::kZ, kKappa, KernelShape::kIndependent));
    c.require(std::abs(coll - kKappa * n * n) <= kRateRelTol * kKappa * n * n,
              fmt("collective N=%g rate %.15g", n, coll));
    c.require(std::abs(ind - kKappa * n) <= kRateRelTol * kKappa * n,
              fmt("independent N=%g rate %.15g", n, ind));
  }
  const int n = 6;
  const auto noise = NoiseModel::along_axis(chain(n), Axis::kZ, kKappa, KernelShape::kCollective);
  const auto series = evolve_noisy(make_ghz(chain(n)), nullptr, noise,
                                   trajectory_config(noise, 2000, 4));
  const auto rate = estimate_initial_rate(series);
  const double exact = kKappa * n * n;
  const double allowed = std::max(kTrajectoryRelTol * exact, kTrajectorySigmas * rate.std_error);
  c.require(std::abs(rate.gamma - exact) <= allowed,
            fmt("trajectory rate %.5f vs %.5f", rate.gamma, exact));
  c.note(fmt("N=6 trajectory rate %.5f +- %.5f (analytic %.2f)", rate.gamma, rate.std_error, exact));
}

struct FamilyCase {
  std::string label;
  std::function<StateVector(int)> make;
  Axis axis;
  KernelShape kernel;
  double expected_slope;
  bool fragile;
};

void criterion_5(Check& c, double& analytic_seconds) {
  const std::vector<int> sizes{4, 6, 8, 10};
  const std::vector<FamilyCase> cases{
      {"GHZ collective", [](int n) { return make_ghz(chain(n)); }, Axis::kZ,
       KernelShape::kCollective, 2.0, true},
      {"GHZ independent", [](int n) { return make_ghz(chain(n)); }, Axis::kZ,
       KernelShape::kIndependent, 1.0, false},
      {"product-plus collective", plus_product, Axis::kZ, KernelShape::kCollective, 1.0, false},
      {"product-plus independent", plus_product, Axis::kZ, KernelShape::kIndependent, 1.0, false},
      {"product-up collective x", [](int n) { return make_basis_state(chain(n), 0); }, Axis::kX,
       KernelShape::kCollective, 1.0, false},
      {"product-up independent x", [](int n) { return make_basis_state(chain(n), 0); }, Axis::kX,
       KernelShape::kIndependent, 1.0, false},
  };

  const auto analytic_start = std::chrono::steady_clock::now();
  for (const auto& fc : cases) {
    std::vector<SizePoint> pts;
    for (int n : sizes) {
      pts.push_back({n, analytic_dephasing_rate(
                            fc.make(n), NoiseModel::along_axis(chain(n), fc.axis, kKappa, fc.kernel))});
    }
    const auto fit = fit_gamma_scaling(pts);
    c.require(std::abs(fit.one_plus_delta - fc.expected_slope) <= kSlopeTol &&
                  fit.fragile == fc.fragile,
              fc.label + fmt(" analytic slope %.4f", fit.one_plus_delta));
  }
  // Zero rate: product-up under z-noise never decoheres.
  for (KernelShape k : {KernelShape::kCollective, KernelShape::kIndependent}) {
    for (int n : sizes) {
      const double g = analytic_dephasing_rate(make_basis_state(chain(n), 0),
                                               NoiseModel::along_axis(chain(n), Axis::kZ, kKappa, k));
      c.require(g == 0.0, fmt("product-up z-noise rate %.3g at N=%g", g, n));
    }
  }
  analytic_seconds = seconds_since(analytic_start);
  c.require(analytic_seconds <= kBudget5Analytic, fmt("analytic part took %.2f s", analytic_seconds));

  std::uint64_t seed = 500;
  std::string slopes;
  for (const auto& fc : cases) {
    std::vector<SizePoint> pts;
    for (int n : sizes) {
      const auto noise = NoiseModel::along_axis(chain(n), fc.axis, kKappa, fc.kernel);
      const auto series = evolve_noisy(fc.make(n), nullptr, noise, trajectory_config(noise, 2000, ++seed));
      pts.push_back({n, estimate_initial_rate(series).gamma});
    }
    const auto fit = fit_gamma_scaling(pts);
    c.require(std::abs(fit.one_plus_delta - fc.expected_slope) <= kSlopeTol &&
                  fit.fragile == fc.fragile,
              fc.label + fmt(" trajectory slope %.4f", fit.one_plus_delta));
    slopes += fc.label + fmt(" %.3f; ", fit.one_plus_delta);
  }
  c.note("trajectory 1+delta: " + slopes);
}

void criterion_6(Check& c) {
  const int n = 4;
  const double t = 10.0;  // kappa t = 0.1
  const auto psi = plus_product(n);
  const auto noise = NoiseModel::along_axis(chain(n), Axis::kZ, kKappa, KernelShape::kIndependent);
  TrajectoryConfig cfg;
  cfg.n_traj = 4000;
  cfg.dt = 0.1;
  cfg.horizon = t;
  cfg.keep_density = true;
  cfg.seed = 6;
  const auto series = evolve_noisy(psi, nullptr, noise, cfg);
  const auto v = oracle::to_dense(psi);
  const oracle::Dense rho0 = v * v.adjoint();
  const double d = oracle::trace_distance(*series.density,
                                          oracle::dephased(rho0, noise.kernel_matrix(), kKappa, t));
  c.require(d < kTraceDistanceTol, fmt("trace distance %.4f", d));
  c.note(fmt("trace distance %.4f", d));
}

void criterion_7(Check& c) {
  for (int n = 4; n <= 10; n += 2) {
    StabilityParams p;
    p.epsilon = 0.05;
    p.min_distance = 1;
    const auto ghz = stability_test(make_ghz(chain(n)), p);
    for (int d = 1; d < n; ++d) {
      c.require(std::abs(ghz.max_deviation_at_distance[d] - 0.5) <= kDeviationTol,
                fmt("GHZ N=%g distance %g deviation %.12g", n, d, ghz.max_deviation_at_distance[d]));
    }
    c.require(!ghz.stable, fmt("GHZ N=%g stable", n));
    for (const auto& psi : {plus_product(n), make_basis_state(chain(n), 0),
                            make_product_state(chain(n), BlochAngles{0.7, 1.9})}) {
      const auto r = stability_test(psi, p);
      c.require(r.max_deviation <= kDeviationTol && r.stable,
                fmt("product N=%g deviation %.3g", n, r.max_deviation));
    }
  }
  nlohmann::json doc = {{"name", "acceptance-correspondence"},
                        {"catalog", true},
                        {"sizes", "6:10:2"},
                        {"experiments", {"cluster", "measure"}}};
  const auto report = run_scenario(Scenario::from_json(doc)).body;
  const auto& corr = report["correspondence"];
  std::string rows;
  for (const auto& row : corr["states"]) {
    c.require(row["agree"].get<bool>(), "disagreement for " + row["state"].get<std::string>());
    rows += row["state"].get<std::string>() + "=" +
            (row["cluster_property"].get<bool>() ? "T" : "F") + "/" +
            (row["measurement_stable"].get<bool>() ? "T" : "F") + " ";
  }
  c.require(corr["all_agree"].get<bool>() && corr["states"].size() == standard_catalog().size(),
            "catalog correspondence");
  c.note("cluster/stable: " + rows);
}

void criterion_8(Check& c) {
  const std::vector<int> sizes{6, 8, 10};
  for (int n : sizes) {
    const double exact = oracle::spectrum(oracle::tfim(n, 1.0, 0.1, 0.0))[0];
    const auto gs = ground_state(Hamiltonian({Model::kTransverseIsing, chain(n), 1.0, 0.1, 1.0, 0.0}),
                                 Which::kLowest);
    c.require(std::abs(gs.front().energy - exact) <= kEnergyTol,
              fmt("N=%g energy off by %.3g", n, gs.front().energy - exact));
  }
  nlohmann::json doc = {{"name", "acceptance-symmetry-breaking"},
                        {"sizes", sizes},
                        {"experiments", {"symmetry-breaking"}},
                        {"parameters", {{"J", 1.0}, {"h", 0.1}, {"seed", 8}}}};
  const auto sb = run_scenario(Scenario::from_json(doc)).body["results"]["symmetry-breaking"];
  for (const auto& row : sb["per_size"]) {
    const double n = row["N"].get<int>();
    const auto& sym = row["symmetric"];
    const auto& pure = row["pure_phase"];
    c.require(std::abs(sym["magnetization"].get<double>()) <= kMagnetizationTol,
              fmt("N=%g <M>_sym %.3g", n, sym["magnetization"].get<double>()));
    c.require(pure["magnetization"].get<double>() >= 0.9 * n,
              fmt("N=%g <M>_pure %.4f", n, pure["magnetization"].get<double>()));
    c.require(sym["energy"].get<double>() <= pure["energy"].get<double>() + kEnergyOrderTol,
              fmt("N=%g E_sym - E_pure = %.3g", n,
                  sym["energy"].get<double>() - pure["energy"].get<double>()));
    c.require(sym["max_variance"].get<double>() >= 0.8 * n * n,
              fmt("N=%g symmetric max variance %.4f", n, sym["max_variance"].get<double>()));
    c.require(pure["max_variance"].get<double>() <= 2.0 * n,
              fmt("N=%g pure-phase max variance %.4f", n, pure["max_variance"].get<double>()));
    const auto& steps = row["cascade_steps_to_nfs"];
    c.require(!steps.is_null() && steps.get<int>() <= 2, fmt("N=%g cascade did not reach NFS", n));
  }
  c.note(fmt("gamma ratio %.0f, %.0f, %.0f", sb["per_size"][0]["gamma_ratio"].get<double>(),
             sb["per_size"][1]["gamma_ratio"].get<double>(),
             sb["per_size"][2]["gamma_ratio"].get<double>()));
}

void criterion_9(Check& c) {
  const auto dir = cliutil::temp_dir();
  const auto scenario = dir / "acceptance_repro.json";
  cliutil::write_file(scenario, R"({
  "name": "acceptance-repro",
  "states": ["ghz", "w", "product-plus", "tfim-ground:h=2"],
  "sizes": "4:8:2",
  "experiments": ["classify", "cluster", "measure", "decohere", "ground", "symmetry-breaking"],
  "parameters": {"n_traj": 200, "seed": 1234, "kernels": ["collective", "independent", "exponential"]}
})");
  std::string reference;
  int runs = 0;
  for (int threads : {1, 2, 4, 1}) {
    const auto out = dir / ("acceptance_repro_" + std::to_string(runs++) + ".json");
    const int rc = cliutil::run_cli("run '" + scenario.string() + "' --out '" + out.string() + "'",
                                    "MACROSTAB_THREADS=" + std::to_string(threads));
    c.require(rc == 0, fmt("run with %g threads exited %g", threads, rc));
    if (rc != 0) return;
    const auto body = cliutil::without_wall_time(out);
    if (reference.empty()) {
      reference = body;
    } else {
      c.require(body == reference, fmt("report differs at %g threads", threads));
    }
  }
  c.note(fmt("%g runs at 1/2/4/1 threads byte-identical", runs));
}

}  // namespace

int main() {
  kernels::configure_threads_from_env();
  struct Entry {
    int id;
    double budget;
    std::function<void(Check&)> body;
  };
  double analytic_seconds = 0.0;
  const std::vector<Entry> entries{
      {1, kBudget1, criterion_1},
      {2, kBudget2, criterion_2},
      {3, kBudget3, criterion_3},
      {4, kBudget4, criterion_4},
      {5, kBudget5, [&](Check& c) { criterion_5(c, analytic_seconds); }},
      {6, kBudget6, criterion_6},
      {7, kBudget7, criterion_7},
      {8, kBudget8, criterion_8},
      {9, 0.0, criterion_9},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.body(check);
    } catch (const std::exception& ex) {
      check.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = seconds_since(start);
    if (e.budget > 0.0) check.require(secs <= e.budget, fmt("runtime %.1f s over budget", secs));
    std::printf("CRITERION %d: %s (%.1f s)%s\n", e.id, check.ok() ? "PASS" : "FAIL", secs,
                check.summary().c_str());
    std::fflush(stdout);
    if (!check.ok()) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
