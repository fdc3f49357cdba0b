#include "macrostab/analyzer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "macrostab/error.hpp"

namespace macrostab {

Eigen::Matrix3d CovarianceMatrix::site_block(int x, int y) const {
  const int n = lattice.n_sites;
  Eigen::Matrix3d b;
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 3; ++c) b(a, c) = entries(a * n + x, c * n + y);
  }
  return b;
}

Eigen::MatrixXd CovarianceMatrix::axis_block(Axis a, Axis b) const {
  const int n = lattice.n_sites;
  return entries.block(axis_index(a) * n, axis_index(b) * n, n, n);
}

CovarianceMatrix covariance_from_moments(const LatticeSpec& lattice, const PauliMoments& m) {
  const int n = lattice.n_sites;
  const int n3 = 3 * n;
  CovarianceMatrix cov{lattice, Eigen::MatrixXd::Zero(n3, n3)};
  for (int x = 0; x < n; ++x) {
    for (int a = 0; a < 3; ++a) {
      const int i = a * n + x;
      for (int y = 0; y < n; ++y) {
        for (int b = 0; b < 3; ++b) {
          const int j = b * n + y;
          double v;
          if (x != y) {
            // Different sites commute: the anticommutator is twice the product.
            v = m.product(x, a, y, b) - m.mean[i] * m.mean[j];
          } else if (a == b) {
            v = 1.0 - m.mean[i] * m.mean[i];
          } else {
            // {sigma^a, sigma^b} = 0 for a != b on one site.
            v = -m.mean[i] * m.mean[j];
          }
          cov.entries(i, j) = v;
        }
      }
    }
  }
  return cov;
}

CovarianceMatrix covariance_matrix(const StateVector& psi) {
  return covariance_from_moments(psi.lattice(), compute_pauli_moments(psi));
}

AdditiveOperator FluctuationReport::optimal_operator(const LatticeSpec& lattice) const {
  std::vector<double> c(coefficients.data(), coefficients.data() + coefficients.size());
  return AdditiveOperator::from_pauli_coefficients(lattice, c);
}

FluctuationReport max_additive_fluctuation(const StateVector& psi) {
  const CovarianceMatrix cov = covariance_matrix(psi);
  const int n = psi.n_sites();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov.entries);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::kNumerical, "covariance eigensolver failed for N=" + std::to_string(n));
  }
  const int top = static_cast<int>(solver.eigenvalues().size()) - 1;
  FluctuationReport report;
  report.n_sites = n;
  report.lambda_max = solver.eigenvalues()(top);
  report.max_variance = n * report.lambda_max;
  Eigen::VectorXd v = solver.eigenvectors().col(top);
  // Sign convention: largest-magnitude component positive.
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0) v = -v;
  report.coefficients = std::sqrt(static_cast<double>(n)) * v;

  report.reconstructed_variance =
      additive_variance(report.optimal_operator(psi.lattice()), psi);
  const double scale = std::max(1.0, std::abs(report.max_variance));
  if (std::abs(report.reconstructed_variance - report.max_variance) > 1e-8 * scale) {
    fail(ErrorKind::kInternal,
         "maximal fluctuation " + std::to_string(report.max_variance) +
             " disagrees with reconstructed operator variance " +
             std::to_string(report.reconstructed_variance));
  }
  return report;
}

bool has_normal_fluctuation(const FluctuationReport& report) {
  return report.max_variance <= kNormalFluctuationFactor * report.n_sites + 1e-9;
}

const char* to_string(FluctuationClass c) noexcept {
  switch (c) {
    case FluctuationClass::kAFS: return "AFS";
    case FluctuationClass::kNFS: return "NFS";
    case FluctuationClass::kIntermediate: return "intermediate";
  }
  return "?";
}

ScalingVerdict classify_scaling(std::span<const SizePoint> sequence) {
  if (distinct_sizes(sequence) < 3) {
    fail(ErrorKind::kArgument, "scaling classification needs at least 3 distinct sizes");
  }
  ScalingVerdict v;
  for (const SizePoint& p : sequence) {
    if (!(p.value > 0.0)) {
      v.exponent = std::numeric_limits<double>::quiet_NaN();
      v.intercept = std::numeric_limits<double>::quiet_NaN();
      v.residual = 0.0;
      v.verdict = FluctuationClass::kNFS;
      return v;
    }
  }
  const LineFit fit = fit_log_log(sequence);
  v.exponent = fit.slope;
  v.intercept = fit.intercept;
  v.residual = fit.residual;
  if (v.exponent >= kAfsExponentThreshold) {
    v.verdict = FluctuationClass::kAFS;
  } else if (v.exponent <= kNfsExponentThreshold) {
    v.verdict = FluctuationClass::kNFS;
  } else {
    v.verdict = FluctuationClass::kIntermediate;
  }
  return v;
}

}  // namespace macrostab
