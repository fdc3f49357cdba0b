#include "macrostab/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "macrostab/error.hpp"
#include "macrostab/kernels.hpp"
#include "macrostab/observables.hpp"

namespace macrostab {
namespace {

// Pseudo-inverse square root restricted to eigen-directions >= kVarianceFloor.
// Returns the 3 x r whitening map (r = retained rank).
Eigen::MatrixXd whitening(const Eigen::Matrix3d& block) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (block + block.transpose()));
  std::vector<int> keep;
  for (int k = 0; k < 3; ++k) {
    if (es.eigenvalues()(k) >= kVarianceFloor) keep.push_back(k);
  }
  Eigen::MatrixXd w(3, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    w.col(static_cast<Eigen::Index>(c)) =
        es.eigenvectors().col(keep[c]) / std::sqrt(es.eigenvalues()(keep[c]));
  }
  return w;
}

}  // namespace

Complex connected_correlator(const StateVector& psi, const LocalOperator& a,
                             const LocalOperator& b) {
  if (a.site() == b.site()) {
    fail(ErrorKind::kArgument, "connected correlator needs two distinct sites");
  }
  psi.require_normalized();
  const StateVector b_psi = apply_local(b, psi);
  const StateVector ab_psi = apply_local(a, b_psi);
  const Complex ab = kernels::parallel::inner_product(psi.amplitudes(), ab_psi.amplitudes());
  return ab - expectation(a, psi) * expectation(b, psi);
}

double normalized_correlation(const CovarianceMatrix& cov, int x, int y) {
  const int n = cov.lattice.n_sites;
  if (x < 0 || y < 0 || x >= n || y >= n) fail(ErrorKind::kArgument, "site out of range");
  if (x == y) fail(ErrorKind::kArgument, "normalized correlation needs x != y");
  const Eigen::MatrixXd wx = whitening(cov.site_block(x, x));
  const Eigen::MatrixXd wy = whitening(cov.site_block(y, y));
  if (wx.cols() == 0 || wy.cols() == 0) return 0.0;
  const Eigen::MatrixXd w = wx.transpose() * cov.site_block(x, y) * wy;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
  return svd.singularValues()(0);
}

double normalized_correlation(const StateVector& psi, int x, int y) {
  if (x == y) fail(ErrorKind::kArgument, "normalized correlation needs x != y");
  return normalized_correlation(covariance_matrix(psi), x, y);
}

CorrelationField correlation_field(const CovarianceMatrix& cov) {
  const int n = cov.lattice.n_sites;
  CorrelationField f{cov.lattice, Eigen::MatrixXd::Identity(n, n)};
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const double r = normalized_correlation(cov, x, y);
      f.rho(x, y) = r;
      f.rho(y, x) = r;
    }
  }
  return f;
}

CorrelationField correlation_field(const StateVector& psi) {
  return correlation_field(covariance_matrix(psi));
}

ClusterReport omega(const CorrelationField& field, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    fail(ErrorKind::kArgument, "epsilon must lie in (0, 1)");
  }
  const int n = field.lattice.n_sites;
  ClusterReport report;
  report.epsilon = epsilon;
  report.omega_of_x.assign(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    int count = 0;
    for (int y = 0; y < n; ++y) {
      if (y != x && field.rho(x, y) > epsilon) ++count;
    }
    report.omega_of_x[static_cast<std::size_t>(x)] = count;
    report.omega = std::max(report.omega, count);
  }
  return report;
}

ClusterReport omega(const StateVector& psi, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    fail(ErrorKind::kArgument, "epsilon must lie in (0, 1)");
  }
  return omega(correlation_field(psi), epsilon);
}

ClusterVerdict cluster_verdict(std::span<const OmegaPoint> sequence) {
  std::set<int> sizes;
  for (const OmegaPoint& p : sequence) sizes.insert(p.n_sites);
  if (sizes.size() < 3) {
    fail(ErrorKind::kArgument, "cluster verdict needs at least 3 distinct sizes");
  }
  ClusterVerdict v;
  v.sequence.assign(sequence.begin(), sequence.end());
  std::stable_sort(v.sequence.begin(), v.sequence.end(),
                   [](const OmegaPoint& a, const OmegaPoint& b) { return a.n_sites < b.n_sites; });
  const OmegaPoint& last = v.sequence.back();
  const OmegaPoint& prev = v.sequence[v.sequence.size() - 2];
  v.has_cluster_property = last.omega == prev.omega && 2 * last.omega <= last.n_sites;
  return v;
}

}  // namespace macrostab
