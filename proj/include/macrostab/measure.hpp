#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "macrostab/observables.hpp"
#include "macrostab/operators.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

// Outcomes with probability below this get no post-measurement state.
inline constexpr double kPostStateThreshold = 1e-12;

// Ideal projective measurement of a non-degenerate single-site observable.
// Index 0 is the larger eigenvalue.
struct MeasurementOutcome {
  LocalOperator observable;
  std::array<double, 2> eigenvalues{};
  std::array<double, 2> probabilities{};
  std::array<std::optional<StateVector>, 2> post_states;
};

// Throws ErrorKind::kArgument for an observable proportional to the identity.
MeasurementOutcome measure_local(const StateVector& psi, const LocalOperator& observable);

// Eigenprojectors (I +- n.sigma)/2 of a non-degenerate observable, as local
// operators; index 0 belongs to the larger eigenvalue.
std::array<LocalOperator, 2> eigenprojectors(const LocalOperator& observable);

// Distribution of b(y) right after a(x) was measured, against the
// distribution of b(y) without the first measurement.
struct ConditionalTable {
  int x = 0;
  int y = 0;
  std::array<double, 2> a_values{};
  std::array<double, 2> b_values{};
  std::array<double, 2> p_a{};
  std::array<double, 2> p_b{};
  // p_b_given_a[i][j] = P(b_j; a_i); NaN when P(a_i) < kPostStateThreshold.
  std::array<std::array<double, 2>, 2> p_b_given_a{};
  // max over outcomes with P(a) >= floor of |P(b;a) - P(b)|; -1 if none.
  double max_deviation(double floor) const;
};

ConditionalTable conditional_distribution(const StateVector& psi, const LocalOperator& a_obs,
                                          const LocalOperator& b_obs);
// Weighted per the projection postulate:
//   P(b;a) = sum_k w_k P_k(a) P_k(b;a) / sum_k w_k P_k(a).
ConditionalTable conditional_distribution(const Mixture& rho, const LocalOperator& a_obs,
                                          const LocalOperator& b_obs);

struct StabilityParams {
  double epsilon = 0.05;     // deviation tolerance
  double varepsilon = 0.05;  // conditioning floor on P(a)
  int min_distance = 1;
};

// 26 unit vectors (i, j, k)/|(i, j, k)| with i, j, k in {-1, 0, 1}, in
// lexicographic order.
std::span<const Eigen::Vector3d> direction_grid();

// Best observable pair found for one ordered site pair (a measured at x).
struct PairDeviation {
  int x = 0;
  int y = 0;
  int distance = 0;
  int grid_a = 0;  // starting grid directions of the refinement
  int grid_b = 0;
  Eigen::Vector3d n = Eigen::Vector3d::UnitZ();  // a = n.sigma(x)
  Eigen::Vector3d m = Eigen::Vector3d::UnitZ();  // b = m.sigma(y)
  int a = 1;  // outcome sign
  int b = 1;
  double p_a = 0.0;
  double p_b_given_a = 0.0;
  double p_b = 0.0;
  double deviation = 0.0;  // lower bound on the sup over observables
};

struct MeasurementStabilityReport {
  double epsilon = 0.0;
  double varepsilon = 0.0;
  int min_distance = 0;
  std::vector<PairDeviation> pairs;  // every ordered pair x != y
  // Indexed by distance; entry 0 unused, -1 where no pair qualifies.
  std::vector<double> max_deviation_at_distance;
  double max_deviation = 0.0;  // over pairs with distance >= min_distance
  bool stable = true;
};

// Sweeps ordered pairs, maximizing |P(b;a) - P(b)| over the directions of
// a(x) and b(y) (grid, then pattern search down to 1e-6 rad) subject to
// P(a) >= varepsilon. Stable iff the maximum over pairs with distance >=
// min_distance is <= epsilon. min_distance >= N is an argument error.
MeasurementStabilityReport stability_test(const StateVector& psi, const StabilityParams& params);
MeasurementStabilityReport stability_test(const Mixture& rho, const StabilityParams& params);
MeasurementStabilityReport stability_test(const LatticeSpec& lattice, const PauliMoments& moments,
                                          const StabilityParams& params);

// Unrefined grid table for export: one row per (x, y, grid_a, grid_b, a, b)
// with distance >= min_distance.
struct DeviationRow {
  int x = 0;
  int y = 0;
  int grid_a = 0;
  int grid_b = 0;
  int a = 1;
  int b = 1;
  double p_b_given_a = 0.0;
  double p_b = 0.0;
  double deviation = 0.0;
};

std::vector<DeviationRow> deviation_table(const LatticeSpec& lattice, const PauliMoments& moments,
                                          const StabilityParams& params);

}  // namespace macrostab
