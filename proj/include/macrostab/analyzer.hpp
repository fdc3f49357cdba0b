#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrostab/fit.hpp"
#include "macrostab/observables.hpp"
#include "macrostab/operators.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

// Symmetrized single-site Pauli covariance
//   C[(x,a),(y,b)] = 1/2 <{d sigma^a(x), d sigma^b(y)}>
// indexed axis-major: row = a * N + x. The z-z block is entries(2N.., 2N..).
struct CovarianceMatrix {
  LatticeSpec lattice;
  Eigen::MatrixXd entries;

  static int index(int site, Axis axis, int n_sites) noexcept {
    return axis_index(axis) * n_sites + site;
  }
  // 3x3 block between sites x and y (rows: axes at x, cols: axes at y).
  Eigen::Matrix3d site_block(int x, int y) const;
  // N x N block between two axes.
  Eigen::MatrixXd axis_block(Axis a, Axis b) const;
};

CovarianceMatrix covariance_matrix(const StateVector& psi);
CovarianceMatrix covariance_from_moments(const LatticeSpec& lattice, const PauliMoments& m);

// Largest <dA^2> over A = sum_{x,a} c_{xa} sigma^a(x) with sum c^2 = N.
struct FluctuationReport {
  int n_sites = 0;
  double max_variance = 0.0;  // N * lambda_max(C)
  double lambda_max = 0.0;
  Eigen::VectorXd coefficients;  // 3N, axis-major, norm sqrt(N)
  // Independent check: additive_variance of the reconstructed operator.
  double reconstructed_variance = 0.0;

  AdditiveOperator optimal_operator(const LatticeSpec& lattice) const;
};

FluctuationReport max_additive_fluctuation(const StateVector& psi);

// A single state is treated as normally fluctuating when its maximal additive
// fluctuation stays within this multiple of N.
inline constexpr double kNormalFluctuationFactor = 2.0;
bool has_normal_fluctuation(const FluctuationReport& report);

enum class FluctuationClass { kAFS, kNFS, kIntermediate };
const char* to_string(FluctuationClass c) noexcept;

inline constexpr double kAfsExponentThreshold = 1.75;
inline constexpr double kNfsExponentThreshold = 1.25;

struct ScalingVerdict {
  double exponent = 0.0;  // NaN when a zero variance was seen
  double intercept = 0.0;
  double residual = 0.0;
  FluctuationClass verdict = FluctuationClass::kNFS;
};

// Log-log fit of max_variance against N. Needs >= 3 distinct sizes.
ScalingVerdict classify_scaling(std::span<const SizePoint> sequence);

}  // namespace macrostab
