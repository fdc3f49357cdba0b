#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "macrostab/analyzer.hpp"
#include "macrostab/hamiltonian.hpp"

using namespace macrostab;
using doctest::Approx;
using testutil::throws_kind;

namespace {

LatticeSpec chain(int n) { return LatticeSpec::chain(n); }

StateVector plus_product(int n) {
  return make_product_state(chain(n), BlochAngles{std::numbers::pi / 2, 0.0});
}

// psi with site labels permuted: new site perm[k] carries old site k.
StateVector permute_sites(const StateVector& psi, const std::vector<int>& perm) {
  const int n = psi.n_sites();
  std::vector<Complex> out(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    std::size_t j = 0;
    for (int k = 0; k < n; ++k) {
      if ((i >> k) & 1U) j |= std::size_t{1} << perm[k];
    }
    out[j] = psi[i];
  }
  return StateVector(psi.lattice(), std::move(out));
}

}  // namespace

TEST_SUITE("analyzer") {

TEST_CASE("covariance examples") {
  const auto g = covariance_matrix(make_ghz(chain(4)));
  const Eigen::MatrixXd zz = g.axis_block(Axis::kZ, Axis::kZ);
  CHECK((zz - Eigen::MatrixXd::Ones(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  const auto up = covariance_matrix(make_product_state(chain(3), BlochAngles{0, 0}));
  CHECK(up.axis_block(Axis::kZ, Axis::kZ).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((up.axis_block(Axis::kX, Axis::kX) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((up.axis_block(Axis::kY, Axis::kY) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("covariance diagonal is one minus squared mean") {
  const auto lat = chain(4);
  const auto psi = StateVector::normalized(lat, testutil::random_vector(lat.dim(), 21));
  const auto cov = covariance_matrix(psi);
  for (Axis a : kAllAxes) {
    for (int x = 0; x < 4; ++x) {
      const double m = expectation(pauli(lat, x, a), psi);
      const int i = CovarianceMatrix::index(x, a, 4);
      CHECK(cov.entries(i, i) == Approx(1.0 - m * m).epsilon(1e-12));
    }
  }
  CHECK((cov.entries - cov.entries.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.entries);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("covariance matches dense oracle") {
  const int n = 3;
  const auto lat = chain(n);
  const auto psi = StateVector::normalized(lat, testutil::random_vector(lat.dim(), 23));
  const auto v = oracle::to_dense(psi);
  const auto cov = covariance_matrix(psi);
  const char axes[3] = {'x', 'y', 'z'};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          const auto A = oracle::site_pauli(n, x, axes[a]);
          const auto B = oracle::site_pauli(n, y, axes[b]);
          const double expected = 0.5 * oracle::expect(A * B + B * A, v) -
                                  oracle::expect(A, v) * oracle::expect(B, v);
          CHECK(cov.entries(a * n + x, b * n + y) == Approx(expected).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("max additive fluctuation examples") {
  const auto ghz = max_additive_fluctuation(make_ghz(chain(4)));
  CHECK(ghz.max_variance == Approx(16.0).epsilon(1e-12));
  CHECK(ghz.reconstructed_variance == Approx(16.0).epsilon(1e-10));
  CHECK(additive_variance(AdditiveOperator::uniform(chain(4), Axis::kZ), make_ghz(chain(4))) ==
        Approx(ghz.max_variance).epsilon(1e-12));
  CHECK(ghz.coefficients.norm() == Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(has_normal_fluctuation(ghz));

  const auto prod = max_additive_fluctuation(make_product_state(chain(6), BlochAngles{0, 0}));
  CHECK(prod.max_variance == Approx(6.0).epsilon(1e-12));
  CHECK(has_normal_fluctuation(prod));
}

TEST_CASE("dicke random scan lower bound") {
  const auto lat = chain(4);
  const auto psi = make_dicke(lat, 2);
  const auto report = max_additive_fluctuation(psi);
  const auto cov = covariance_matrix(psi);
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> d;
  double best = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    Eigen::VectorXd c(12);
    for (int k = 0; k < 12; ++k) c[k] = d(gen);
    c *= 2.0 / c.norm();  // sum c^2 = N
    best = std::max(best, c.dot(cov.entries * c));
  }
  CHECK(best <= report.max_variance * (1.0 + 1e-8));
  CHECK(best > 0.5 * report.max_variance);
  // Scan checks through the independent variance route as well
  CHECK(report.reconstructed_variance == Approx(report.max_variance).epsilon(1e-9));
  const auto A = report.optimal_operator(lat);
  CHECK(additive_variance(A, psi) == Approx(report.max_variance).epsilon(1e-9));
}

TEST_CASE("fluctuation is invariant under site relabeling") {
  const auto lat = chain(5);
  const auto psi = StateVector::normalized(lat, testutil::random_vector(lat.dim(), 31));
  const double base = max_additive_fluctuation(psi).max_variance;
  for (const std::vector<int>& perm :
       {std::vector<int>{4, 3, 2, 1, 0}, std::vector<int>{1, 0, 3, 4, 2},
        std::vector<int>{2, 4, 0, 1, 3}}) {
    CHECK(max_additive_fluctuation(permute_sites(psi, perm)).max_variance ==
          Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("scaling classification examples") {
  const auto afs = classify_scaling(std::vector<SizePoint>{{4, 16}, {6, 36}, {8, 64}, {10, 100}});
  CHECK(std::abs(afs.exponent - 2.0) < 1e-9);
  CHECK(afs.verdict == FluctuationClass::kAFS);
  const auto nfs = classify_scaling(std::vector<SizePoint>{{4, 4}, {6, 6}, {8, 8}, {10, 10}});
  CHECK(std::abs(nfs.exponent - 1.0) < 1e-9);
  CHECK(nfs.verdict == FluctuationClass::kNFS);
  const auto dbl = classify_scaling(std::vector<SizePoint>{{4, 8}, {8, 16}, {16, 32}});
  CHECK(std::abs(dbl.exponent - 1.0) < 1e-9);
  CHECK(dbl.verdict == FluctuationClass::kNFS);

  const auto zero = classify_scaling(std::vector<SizePoint>{{4, 0}, {6, 6}, {8, 8}});
  CHECK(std::isnan(zero.exponent));
  CHECK(zero.residual == 0.0);
  CHECK(zero.verdict == FluctuationClass::kNFS);

  CHECK(throws_kind(ErrorKind::kArgument,
                    [] { classify_scaling(std::vector<SizePoint>{{4, 16}, {6, 36}}); }));
  CHECK(throws_kind(ErrorKind::kArgument, [] {
    classify_scaling(std::vector<SizePoint>{{4, 16}, {4, 16}, {6, 36}});
  }));
}

TEST_CASE("sweeps over state families") {
  std::vector<SizePoint> ghz, plus, up;
  for (int n = 4; n <= 12; n += 2) {
    ghz.push_back({n, max_additive_fluctuation(make_ghz(chain(n))).max_variance});
    plus.push_back({n, max_additive_fluctuation(plus_product(n)).max_variance});
    up.push_back({n, max_additive_fluctuation(make_basis_state(chain(n), 0)).max_variance});
  }
  CHECK(classify_scaling(ghz).verdict == FluctuationClass::kAFS);
  CHECK(classify_scaling(ghz).exponent == Approx(2.0).epsilon(1e-9));
  CHECK(classify_scaling(plus).verdict == FluctuationClass::kNFS);
  CHECK(classify_scaling(up).exponent == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("imported state vectors are analyzed like built ones") {
  const auto g = make_ghz(chain(5));
  const StateVector copy(chain(5), g.to_vector());
  CHECK(max_additive_fluctuation(copy).max_variance == Approx(25.0).epsilon(1e-12));
}

}  // TEST_SUITE
