#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrostab/eigensolver.hpp"
#include "macrostab/fit.hpp"
#include "macrostab/hamiltonian.hpp"
#include "macrostab/operators.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

// Spatial correlation g(x - y) of the noise field.
enum class KernelShape {
  kCollective,   // g = 1
  kIndependent,  // g = delta_xy
  kExponential,  // g = exp(-|x - y| / xi), chain distance
};

const char* to_string(KernelShape kernel) noexcept;
KernelShape parse_kernel(const std::string& name);

// White noise field f(x, t) coupled through H_int = sum_x f(x,t) a(x), with
// E[f(x,t) f(y,t')] = kappa g(x - y) delta(t - t'). The averaged state obeys
//   d rho/dt = -(kappa/2) sum_{x,y} g(x - y) [a(x), [a(y), rho]].
struct NoiseModel {
  LatticeSpec lattice;
  std::vector<LocalOperator> coupling;  // a(x), one per site
  double kappa = 0.0;
  KernelShape kernel = KernelShape::kIndependent;
  double xi = 1.0;

  static NoiseModel along_axis(const LatticeSpec& lattice, Axis axis, double kappa,
                               KernelShape kernel, double xi = 1.0);
  // Couples through the terms of an additive operator (e.g. the maximal
  // fluctuation direction found by the analyzer).
  static NoiseModel along_operator(const AdditiveOperator& op, double kappa, KernelShape kernel,
                                   double xi = 1.0);

  Eigen::MatrixXd kernel_matrix() const;
  double kernel_lambda_max() const;
  // kappa >= 0, finite xi > 0, g positive semidefinite (ErrorKind::kModel).
  void validate() const;
  // Whether every a(x) is diagonal in the sigma_z basis.
  bool is_diagonal() const noexcept;
};

// Initial fidelity-decay rate -dF/dt at t = 0 for F(t) = <psi|rho(t)|psi>:
//   Gamma = kappa sum_{x,y} g(x - y) Re <d a(x) d a(y)>.
double analytic_dephasing_rate(const StateVector& psi, const NoiseModel& noise);

inline constexpr int kDensityMatrixMaxSites = 8;
inline constexpr int kMinTrajectories = 100;

struct TrajectoryConfig {
  int n_traj = 1000;
  double dt = 0.01;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  bool keep_density = false;
  int n_batches = 20;  // for the rate standard error
};

// Largest admissible time step: 0.1 / (kappa N lambda_max(g)).
double max_stable_dt(const NoiseModel& noise);

struct FidelitySeries {
  std::vector<double> time;
  std::vector<double> mean;       // F(t) over trajectories
  std::vector<double> std_error;  // standard error of the mean
  std::vector<std::vector<double>> batch_mean;  // [batch][step]
  std::optional<Eigen::MatrixXcd> density;     // ensemble density at the horizon
  int n_traj = 0;
  double max_norm_drift = 0.0;
};

// Stochastic unitary trajectories: per step, Wiener increments W with
// covariance kappa g dt drive exp(-i sum_x W_x a(x)); a non-null Hamiltonian
// is interleaved with a symmetric split. Trajectory k draws its noise from the
// counter stream (seed, k, step), so results do not depend on scheduling.
FidelitySeries evolve_noisy(const StateVector& psi0, const Hamiltonian* hamiltonian,
                            const NoiseModel& noise, const TrajectoryConfig& config);

struct RateEstimate {
  double gamma = 0.0;
  double std_error = 0.0;
  int n_points = 0;
  double window = 0.0;  // fitted time window [0, window]
};

inline constexpr double kRateWindowFraction = 0.05;

// Weighted least-squares slope (through the origin) of -ln F over the first
// `window_fraction` of the horizon; standard error from batch means.
RateEstimate estimate_initial_rate(const FidelitySeries& series,
                                   double window_fraction = kRateWindowFraction);

inline constexpr double kFragileExponent = 1.5;

struct DecoherenceFit {
  std::vector<SizePoint> gamma_per_size;
  double K = 0.0;
  double one_plus_delta = 0.0;
  double residual = 0.0;
  bool fragile = false;
};

// Log-log fit of Gamma ~ K N^{1 + delta}. Needs >= 3 sizes and Gamma > 0.
DecoherenceFit fit_gamma_scaling(std::span<const SizePoint> points);

enum class PurePhaseMethod { kDoubletSuperposition, kSymmetryBreakingField };
const char* to_string(PurePhaseMethod method) noexcept;
PurePhaseMethod parse_pure_phase_method(const std::string& name);

inline constexpr double kSymmetryBreakingFieldRatio = 0.05;

struct PurePhaseResult {
  StateVector state;
  double energy = 0.0;
  double magnetization = 0.0;
  bool paramagnetic_warning = false;
};

// Pure-phase vacuum of a transverse-field Ising chain: either the doublet
// superposition (|E0> + e^{i phi}|E1>)/sqrt 2 of the lowest even and odd
// states with phi maximizing <M>, or the ground state with B = 0.05 J.
PurePhaseResult pure_phase_vacuum(const HamiltonianSpec& spec, PurePhaseMethod method,
                                  const LanczosOptions& options = {});

}  // namespace macrostab
