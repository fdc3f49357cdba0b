#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "macrostab/dynamics.hpp"
#include "macrostab/hamiltonian.hpp"
#include "macrostab/lattice.hpp"

namespace macrostab {

enum class Experiment { kClassify, kCluster, kMeasure, kDecohere, kGround, kSymmetryBreaking };
const char* to_string(Experiment e) noexcept;
Experiment parse_experiment(const std::string& name);

// Coupling of the noise: a Pauli axis on every site, or the maximal-fluctuation
// operator the analyzer finds for each state and size.
enum class NoiseAxis { kX, kY, kZ, kOptimal };
const char* to_string(NoiseAxis axis) noexcept;
NoiseAxis parse_noise_axis(const std::string& name);

struct ScenarioParams {
  double epsilon = 0.1;           // cluster threshold on rho
  double epsilon_measure = 0.05;  // tolerance on |P(b;a) - P(b)|
  double varepsilon = 0.05;       // floor on P(a)
  std::optional<int> min_distance;  // default N/2
  double kappa = 0.01;
  std::vector<KernelShape> kernels{KernelShape::kCollective, KernelShape::kIndependent};
  NoiseAxis axis = NoiseAxis::kZ;
  double xi = 2.0;
  int n_traj = 0;  // 0: analytic rates only
  std::optional<double> dt;
  std::optional<double> horizon;
  std::uint64_t seed = 1;
  Model model = Model::kTransverseIsing;
  double J = 1.0;
  double h = 0.1;
  double delta = 1.0;
  double B = 0.0;
  PurePhaseMethod method = PurePhaseMethod::kDoubletSuperposition;

  int min_distance_for(int n_sites) const { return min_distance.value_or(n_sites / 2); }
};

// Trajectory horizon and step for one size when not given explicitly:
// T = 0.5 / (kappa N lambda_g) in 200 steps.
struct TrajectoryGrid {
  double dt = 0.0;
  double horizon = 0.0;
};
inline constexpr int kDefaultTrajectorySteps = 200;
TrajectoryGrid trajectory_grid(const ScenarioParams& params, const NoiseModel& noise);

struct Scenario {
  std::string name = "scenario";
  std::vector<std::string> states;
  std::vector<int> sizes;
  Geometry geometry = Geometry::kOpenChain;
  int max_sites = kDefaultMaxSites;
  std::vector<Experiment> experiments;
  ScenarioParams params;
  std::string report_path;
  std::string csv_dir;

  // Strict: unknown keys, wrong types and bad values are
  // ErrorKind::kValidation. Runs validate().
  static Scenario from_json(const nlohmann::json& doc);
  static Scenario load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  bool has(Experiment e) const;
  LatticeSpec lattice(int n_sites) const;
  // Every module precondition that can be checked before computing.
  // ErrorKind::kSize for sizes above the cap, kValidation otherwise.
  void validate() const;
};

// "a:b:step" or "a:b" (step 1) or a comma list.
std::vector<int> parse_sizes(const std::string& text);

}  // namespace macrostab
