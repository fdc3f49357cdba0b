#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "macrostab/analyzer.hpp"
#include "macrostab/dynamics.hpp"
#include "macrostab/eigensolver.hpp"
#include "macrostab/hamiltonian.hpp"

using namespace macrostab;
using doctest::Approx;
using testutil::throws_kind;

namespace {

LatticeSpec chain(int n) { return LatticeSpec::chain(n); }

HamiltonianSpec tfim_spec(int n, double J, double h, double B = 0.0) {
  return {Model::kTransverseIsing, chain(n), J, h, 1.0, B};
}

StateVector plus_product(int n) {
  return make_product_state(chain(n), BlochAngles{std::numbers::pi / 2, 0.0});
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("hamiltonian matvec matches dense oracle") {
  for (int n : {2, 3, 5}) {
    for (const HamiltonianSpec& spec :
         {tfim_spec(n, 1.0, 0.7, 0.2), HamiltonianSpec{Model::kXXZ, chain(n), 0.8, 0.3, 1.4, -0.1},
          HamiltonianSpec{Model::kTransverseIsing, LatticeSpec::chain(n, Geometry::kPeriodicChain),
                          1.0, 0.4, 1.0, 0.0}}) {
      const Hamiltonian h(spec);
      const bool periodic = spec.lattice.geometry == Geometry::kPeriodicChain;
      const oracle::Dense dense =
          spec.model == Model::kXXZ ? oracle::xxz(n, spec.J, spec.delta, spec.h, spec.B, periodic)
                                    : oracle::tfim(n, spec.J, spec.h, spec.B, periodic);
      const auto v = testutil::random_vector(h.dim(), 40 + n);
      std::vector<Complex> out(v.size()), out_serial(v.size());
      h.apply(v, out);
      h.apply_serial(v, out_serial);
      const oracle::Vec ref =
          dense * Eigen::Map<const oracle::Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(std::abs(out[i] - ref[static_cast<Eigen::Index>(i)]) < 1e-12);
        CHECK(out[i] == out_serial[i]);
      }
    }
  }
}

TEST_CASE("ground energy examples") {
  const auto gs = ground_state(Hamiltonian(tfim_spec(2, 1.0, 1.0)), Which::kLowest);
  CHECK(gs.front().energy == Approx(-std::sqrt(5.0)).epsilon(1e-10));

  const Hamiltonian classical(tfim_spec(5, 1.0, 0.0));
  const auto up = make_basis_state(chain(5), 0);
  CHECK(classical.expectation(up) == Approx(-4.0).epsilon(1e-14));
  CHECK(classical.residual(up, -4.0) < 1e-14);

  const Hamiltonian heis({Model::kXXZ, chain(2), 1.0, 0.0, 1.0, 0.0});
  const auto singlet = ground_state(heis, Which::kLowest);
  CHECK(singlet.front().energy == Approx(-3.0).epsilon(1e-10));
  CHECK(oracle::spectrum(oracle::xxz(2, 1.0, 1.0, 0.0, 0.0))[0] == Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("iterative ground energies match dense diagonalization") {
  struct Case {
    int n;
    double J, h;
  };
  for (const Case& c : {Case{3, 1.0, 0.5}, Case{4, 0.7, 1.3}, Case{6, 1.0, 0.1},
                        Case{7, -1.0, 2.0}, Case{8, 1.0, 1.0}, Case{10, 1.0, 0.1}}) {
    const double exact = oracle::spectrum(oracle::tfim(c.n, c.J, c.h, 0.0))[0];
    const auto gs = ground_state(Hamiltonian(tfim_spec(c.n, c.J, c.h)), Which::kLowest);
    CHECK(std::abs(gs.front().energy - exact) < 1e-8);
    CHECK(gs.front().residual < 1e-6);
  }
  const double xxz_exact = oracle::spectrum(oracle::xxz(6, 1.0, 0.5, 0.3, 0.1))[0];
  const auto xxz = ground_state(Hamiltonian({Model::kXXZ, chain(6), 1.0, 0.3, 0.5, 0.1}),
                                Which::kLowest);
  CHECK(std::abs(xxz.front().energy - xxz_exact) < 1e-8);
}

TEST_CASE("symmetric ground state of the ordered chain") {
  const auto gs = ground_state(Hamiltonian(tfim_spec(8, 1.0, 0.1)), Which::kLowestTwo);
  REQUIRE(gs.size() == 2);
  CHECK(std::abs(magnetization(gs[0].state)) < 1e-6);
  CHECK(gs[0].energy <= gs[1].energy);
  CHECK(additive_variance(AdditiveOperator::uniform(chain(8), Axis::kZ), gs[0].state) >=
        0.8 * 64);
  CHECK(throws_kind(ErrorKind::kArgument, [] {
    lowest_eigenpair(Hamiltonian(tfim_spec(4, 1.0, 0.1, 0.2)), Sector::kEven);
  }));
}

TEST_CASE("pure-phase vacuum") {
  const auto spec = tfim_spec(8, 1.0, 0.1);
  const auto e0 = ground_state(Hamiltonian(spec), Which::kLowest).front().energy;
  const auto doublet = pure_phase_vacuum(spec, PurePhaseMethod::kDoubletSuperposition);
  CHECK(doublet.magnetization >= 0.9 * 8);
  CHECK(doublet.energy >= e0 - 1e-10);
  CHECK_FALSE(doublet.paramagnetic_warning);
  CHECK(doublet.state.is_normalized());
  CHECK(has_normal_fluctuation(max_additive_fluctuation(doublet.state)));

  const auto field = pure_phase_vacuum(spec, PurePhaseMethod::kSymmetryBreakingField);
  CHECK(field.magnetization >= 0.9 * 8);
  CHECK(field.energy >= e0 - 1e-10);

  const auto near_classical = pure_phase_vacuum(tfim_spec(6, 1.0, 1e-3),
                                                PurePhaseMethod::kDoubletSuperposition);
  CHECK(std::abs(near_classical.state[0]) > 0.9999);

  CHECK(pure_phase_vacuum(tfim_spec(6, 1.0, 1.5), PurePhaseMethod::kDoubletSuperposition)
            .paramagnetic_warning);
  CHECK(parse_pure_phase_method("doublet") == PurePhaseMethod::kDoubletSuperposition);
  CHECK(parse_pure_phase_method("sb-field") == PurePhaseMethod::kSymmetryBreakingField);
  CHECK(throws_kind(ErrorKind::kArgument, [] { parse_pure_phase_method("magic"); }));
}

TEST_CASE("analytic dephasing rate examples") {
  const auto ghz = make_ghz(chain(4));
  CHECK(analytic_dephasing_rate(
            ghz, NoiseModel::along_axis(chain(4), Axis::kZ, 0.01, KernelShape::kCollective)) ==
        Approx(0.16).epsilon(1e-12));
  CHECK(analytic_dephasing_rate(
            ghz, NoiseModel::along_axis(chain(4), Axis::kZ, 0.01, KernelShape::kIndependent)) ==
        Approx(0.04).epsilon(1e-12));
  for (std::uint64_t i : {0ULL, 5ULL, 15ULL}) {
    for (KernelShape k :
         {KernelShape::kCollective, KernelShape::kIndependent, KernelShape::kExponential}) {
      CHECK(analytic_dephasing_rate(make_basis_state(chain(4), i),
                                    NoiseModel::along_axis(chain(4), Axis::kZ, 0.3, k, 2.0)) ==
            0.0);
    }
  }
}

TEST_CASE("analytic rate matches dense double-commutator oracle") {
  const int n = 4;
  const auto lat = chain(n);
  const auto psi = StateVector::normalized(lat, testutil::random_vector(lat.dim(), 61));
  const auto v = oracle::to_dense(psi);
  for (Axis axis : kAllAxes) {
    const char name = "xyz"[axis_index(axis)];
    std::vector<oracle::Dense> a;
    for (int x = 0; x < n; ++x) a.push_back(oracle::site_pauli(n, x, name));
    for (KernelShape k :
         {KernelShape::kCollective, KernelShape::kIndependent, KernelShape::kExponential}) {
      const auto noise = NoiseModel::along_axis(lat, axis, 0.02, k, 1.5);
      CHECK(analytic_dephasing_rate(psi, noise) ==
            Approx(oracle::dephasing_rate(v, a, noise.kernel_matrix(), 0.02)).epsilon(1e-10));
    }
  }
}

TEST_CASE("noise kernel matrices and validation") {
  const auto lat = chain(4);
  const auto coll = NoiseModel::along_axis(lat, Axis::kZ, 0.1, KernelShape::kCollective);
  CHECK((coll.kernel_matrix() - Eigen::MatrixXd::Ones(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(coll.kernel_lambda_max() == Approx(4.0).epsilon(1e-12));
  CHECK(max_stable_dt(coll) == Approx(0.1 / (0.1 * 4 * 4)).epsilon(1e-12));
  const auto ind = NoiseModel::along_axis(lat, Axis::kZ, 0.1, KernelShape::kIndependent);
  CHECK(ind.kernel_lambda_max() == Approx(1.0).epsilon(1e-12));
  const auto ex = NoiseModel::along_axis(lat, Axis::kX, 0.1, KernelShape::kExponential, 2.0);
  CHECK(ex.kernel_matrix()(0, 3) == Approx(std::exp(-1.5)).epsilon(1e-14));
  CHECK_FALSE(ex.is_diagonal());
  CHECK(coll.is_diagonal());
  CHECK(throws_kind(ErrorKind::kModel,
                    [&] { NoiseModel::along_axis(lat, Axis::kZ, -1.0, KernelShape::kCollective); }));
  CHECK(throws_kind(ErrorKind::kModel, [&] {
    NoiseModel::along_axis(lat, Axis::kZ, 0.1, KernelShape::kExponential, 0.0);
  }));
  CHECK(parse_kernel("collective") == KernelShape::kCollective);
  CHECK(throws_kind(ErrorKind::kArgument, [] { parse_kernel("pink"); }));
}

TEST_CASE("trajectory preconditions") {
  const auto lat = chain(4);
  const auto psi = make_ghz(lat);
  const auto noise = NoiseModel::along_axis(lat, Axis::kZ, 0.01, KernelShape::kCollective);
  TrajectoryConfig cfg;
  cfg.n_traj = 99;
  cfg.dt = 0.1;
  cfg.horizon = 1.0;
  CHECK(throws_kind(ErrorKind::kArgument, [&] { evolve_noisy(psi, nullptr, noise, cfg); }));
  cfg.n_traj = 100;
  cfg.dt = 2.0 * max_stable_dt(noise);
  cfg.horizon = 10.0 * cfg.dt;
  CHECK(throws_kind(ErrorKind::kArgument, [&] { evolve_noisy(psi, nullptr, noise, cfg); }));
  const auto lat9 = chain(9);
  TrajectoryConfig big;
  big.n_traj = 100;
  big.dt = 0.01;
  big.horizon = 0.05;
  big.keep_density = true;
  CHECK(throws_kind(ErrorKind::kCapability, [&] {
    evolve_noisy(make_ghz(lat9), nullptr,
                 NoiseModel::along_axis(lat9, Axis::kZ, 0.01, KernelShape::kIndependent), big);
  }));
}

TEST_CASE("zero noise leaves the fidelity at one") {
  const auto lat = chain(5);
  const auto psi = make_ghz(lat);
  TrajectoryConfig cfg;
  cfg.n_traj = 100;
  cfg.dt = 0.05;
  cfg.horizon = 1.0;
  const auto series = evolve_noisy(
      psi, nullptr, NoiseModel::along_axis(lat, Axis::kX, 0.0, KernelShape::kCollective), cfg);
  REQUIRE(series.mean.size() == series.time.size());
  for (double f : series.mean) CHECK(std::abs(f - 1.0) < 1e-9);
  CHECK(series.time.front() == 0.0);
  CHECK(series.time.back() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trajectory rate reproduces the analytic rate") {
  const auto lat = chain(4);
  const auto psi = make_ghz(lat);
  const auto noise = NoiseModel::along_axis(lat, Axis::kZ, 0.01, KernelShape::kCollective);
  const double gamma = analytic_dephasing_rate(psi, noise);
  TrajectoryConfig cfg;
  cfg.n_traj = 800;
  cfg.horizon = 5.0 * max_stable_dt(noise);
  cfg.dt = cfg.horizon / 200;
  cfg.seed = 11;
  const auto series = evolve_noisy(psi, nullptr, noise, cfg);
  CHECK(series.max_norm_drift < 1e-8);
  const auto rate = estimate_initial_rate(series);
  CHECK(rate.std_error > 0.0);
  CHECK(std::abs(rate.gamma - gamma) < std::max(4.0 * rate.std_error, 0.1 * gamma));

  const auto again = evolve_noisy(psi, nullptr, noise, cfg);
  CHECK(again.mean == series.mean);
}

TEST_CASE("ensemble density matches the closed-form dephasing channel") {
  const int n = 3;
  const auto lat = chain(n);
  const auto psi = plus_product(n);
  const double kappa = 0.05;
  const auto noise = NoiseModel::along_axis(lat, Axis::kZ, kappa, KernelShape::kIndependent);
  TrajectoryConfig cfg;
  cfg.n_traj = 1500;
  cfg.dt = 0.1;
  cfg.horizon = 2.0;
  cfg.keep_density = true;
  cfg.seed = 3;
  const auto series = evolve_noisy(psi, nullptr, noise, cfg);
  REQUIRE(series.density.has_value());
  const auto v = oracle::to_dense(psi);
  const oracle::Dense rho0 = v * v.adjoint();
  const auto exact = oracle::dephased(rho0, noise.kernel_matrix(), kappa, 2.0);
  CHECK(oracle::trace_distance(*series.density, exact) < 0.05);
  CHECK(std::abs(series.density->trace() - Complex(1.0)) < 1e-10);
}

TEST_CASE("noisy evolution with a Hamiltonian keeps trajectories unitary") {
  const auto lat = chain(4);
  const Hamiltonian h(tfim_spec(4, 1.0, 0.5));
  const auto noise = NoiseModel::along_axis(lat, Axis::kX, 0.05, KernelShape::kExponential, 1.0);
  TrajectoryConfig cfg;
  cfg.n_traj = 100;
  cfg.dt = 0.05;
  cfg.horizon = 1.0;
  const auto series = evolve_noisy(make_ghz(lat), &h, noise, cfg);
  CHECK(series.max_norm_drift < 1e-8);
  for (double f : series.mean) {
    CHECK(f <= 1.0 + 1e-12);
    CHECK(f >= 0.0);
  }
}

TEST_CASE("gamma scaling fits") {
  const auto coll = fit_gamma_scaling(std::vector<SizePoint>{{4, 0.16}, {6, 0.36}, {8, 0.64}});
  CHECK(coll.one_plus_delta == Approx(2.0).epsilon(1e-9));
  CHECK(coll.K == Approx(0.01).epsilon(1e-9));
  CHECK(coll.fragile);
  const auto ind = fit_gamma_scaling(std::vector<SizePoint>{{4, 0.04}, {6, 0.06}, {8, 0.08}});
  CHECK(ind.one_plus_delta == Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(ind.fragile);
  const auto flat = fit_gamma_scaling(std::vector<SizePoint>{{4, 0.3}, {6, 0.3}, {8, 0.3}});
  CHECK(std::abs(flat.one_plus_delta) < 1e-12);
  CHECK_FALSE(flat.fragile);
  CHECK(throws_kind(ErrorKind::kArgument, [] {
    fit_gamma_scaling(std::vector<SizePoint>{{4, 0.0}, {6, 0.3}, {8, 0.3}});
  }));
}

}  // TEST_SUITE
