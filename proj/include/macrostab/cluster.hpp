#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrostab/analyzer.hpp"
#include "macrostab/operators.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

// <ab> - <a><b> for local operators on distinct sites.
Complex connected_correlator(const StateVector& psi, const LocalOperator& a,
                             const LocalOperator& b);

// Directions whose marginal variance falls below this are projected out.
inline constexpr double kVarianceFloor = 1e-10;

// rho(x,y): supremum over single-site Hermitian a(x), b(y) of
//   |<da db>| / sqrt(<da^2><db^2>),
// the largest singular value of C_xx^{-1/2} C_xy C_yy^{-1/2}.
double normalized_correlation(const StateVector& psi, int x, int y);
double normalized_correlation(const CovarianceMatrix& cov, int x, int y);

struct CorrelationField {
  LatticeSpec lattice;
  Eigen::MatrixXd rho;  // N x N, rho(x,x) = 1
};

CorrelationField correlation_field(const StateVector& psi);
CorrelationField correlation_field(const CovarianceMatrix& cov);

struct ClusterReport {
  double epsilon = 0.0;
  std::vector<int> omega_of_x;  // |Omega(eps, x)|: sites y != x with rho(x,y) > eps
  int omega = 0;                // max over x
};

ClusterReport omega(const StateVector& psi, double epsilon);
ClusterReport omega(const CorrelationField& field, double epsilon);

struct OmegaPoint {
  int n_sites = 0;
  int omega = 0;
};

inline constexpr const char* kClusterRule =
    "Omega(eps) equal at the two largest sizes and Omega(eps) <= N/2 at the largest size";

struct ClusterVerdict {
  bool has_cluster_property = false;
  std::vector<OmegaPoint> sequence;  // sorted by size
  std::string rule = kClusterRule;
};

// Finite-size reading of "Omega(eps) independent of V for large V".
ClusterVerdict cluster_verdict(std::span<const OmegaPoint> sequence);

}  // namespace macrostab
