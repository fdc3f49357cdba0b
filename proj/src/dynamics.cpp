#include "macrostab/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>

#include <Eigen/Eigenvalues>

#include "macrostab/analyzer.hpp"
#include "macrostab/error.hpp"
#include "macrostab/kernels.hpp"
#include "macrostab/observables.hpp"
#include "macrostab/rng.hpp"

namespace macrostab {
namespace {

using Index = std::int64_t;

// exp(-i w a) for a single-site Hermitian a = c0 + c . sigma.
Matrix2 noise_unitary(const PauliDecomposition& a, double w) {
  const auto& [cx, cy, cz] = a.vector;
  const double r = std::sqrt(cx * cx + cy * cy + cz * cz);
  const Complex global = std::exp(Complex(0.0, -w * a.identity));
  if (r == 0.0) return {global, 0.0, 0.0, global};
  const double c = std::cos(w * r);
  const double s = std::sin(w * r) / r;
  const Complex mi{0.0, -1.0};
  return {global * (c + mi * s * cz), global * (mi * s * Complex(cx, -cy)),
          global * (mi * s * Complex(cx, cy)), global * (c - mi * s * cz)};
}

// Same product of exp(-i w_x a(x)) for diagonal a(x): the phase of basis
// state i is built by doubling over sites, one multiply per amplitude.
void apply_diagonal_noise(const std::vector<PauliDecomposition>& coupling, const Eigen::VectorXd& w,
                          std::vector<Complex>& phase, std::vector<Complex>& psi) {
  Complex base{1.0, 0.0};
  for (std::size_t x = 0; x < coupling.size(); ++x) {
    base *= std::exp(Complex(0.0, -w(static_cast<Eigen::Index>(x)) *
                                      (coupling[x].identity + coupling[x].vector[2])));
  }
  phase[0] = base;
  for (std::size_t x = 0; x < coupling.size(); ++x) {
    const Complex ratio =
        std::exp(Complex(0.0, 2.0 * w(static_cast<Eigen::Index>(x)) * coupling[x].vector[2]));
    const std::size_t half = std::size_t{1} << x;
    for (std::size_t i = 0; i < half; ++i) phase[i + half] = phase[i] * ratio;
  }
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= phase[i];
}

// Square-root factor L with L L^T = g (g positive semidefinite).
Eigen::MatrixXd kernel_factor(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal();
}

double slope_through_origin(std::span<const double> t, std::span<const double> y,
                            std::span<const double> w) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    num += w[k] * t[k] * y[k];
    den += w[k] * t[k] * t[k];
  }
  return num / den;
}

}  // namespace

const char* to_string(KernelShape kernel) noexcept {
  switch (kernel) {
    case KernelShape::kCollective: return "collective";
    case KernelShape::kIndependent: return "independent";
    case KernelShape::kExponential: return "exponential";
  }
  return "?";
}

KernelShape parse_kernel(const std::string& name) {
  if (name == "collective") return KernelShape::kCollective;
  if (name == "independent") return KernelShape::kIndependent;
  if (name == "exponential") return KernelShape::kExponential;
  fail(ErrorKind::kArgument, "unknown noise kernel '" + name + "'");
}

NoiseModel NoiseModel::along_axis(const LatticeSpec& lattice, Axis axis, double kappa,
                                  KernelShape kernel, double xi) {
  return along_operator(AdditiveOperator::uniform(lattice, axis), kappa, kernel, xi);
}

NoiseModel NoiseModel::along_operator(const AdditiveOperator& op, double kappa,
                                      KernelShape kernel, double xi) {
  NoiseModel m{op.lattice(), op.terms(), kappa, kernel, xi};
  m.validate();
  return m;
}

Eigen::MatrixXd NoiseModel::kernel_matrix() const {
  const int n = lattice.n_sites;
  Eigen::MatrixXd g(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      switch (kernel) {
        case KernelShape::kCollective: g(x, y) = 1.0; break;
        case KernelShape::kIndependent: g(x, y) = x == y ? 1.0 : 0.0; break;
        case KernelShape::kExponential:
          g(x, y) = std::exp(-lattice.distance(x, y) / xi);
          break;
      }
    }
  }
  return g;
}

double NoiseModel::kernel_lambda_max() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel_matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

void NoiseModel::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) fail(ErrorKind::kModel, "kappa must be >= 0");
  if (kernel == KernelShape::kExponential && !(xi > 0.0 && std::isfinite(xi))) {
    fail(ErrorKind::kModel, "exponential kernel needs a finite xi > 0");
  }
  if (coupling.size() != static_cast<std::size_t>(lattice.n_sites)) {
    fail(ErrorKind::kModel, "noise needs one coupling operator per site");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel_matrix(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -1e-10) {
    fail(ErrorKind::kModel, std::string(to_string(kernel)) +
                                " kernel is not positive semidefinite (min eigenvalue " +
                                std::to_string(lo) + ")");
  }
}

bool NoiseModel::is_diagonal() const noexcept {
  return std::all_of(coupling.begin(), coupling.end(), [](const LocalOperator& a) {
    const auto p = a.pauli();
    return p.vector[0] == 0.0 && p.vector[1] == 0.0;
  });
}

double analytic_dephasing_rate(const StateVector& psi, const NoiseModel& noise) {
  noise.validate();
  if (noise.lattice.n_sites != psi.n_sites()) {
    fail(ErrorKind::kArgument, "noise model and state live on different lattices");
  }
  const CovarianceMatrix cov = covariance_matrix(psi);
  const Eigen::MatrixXd g = noise.kernel_matrix();
  const int n = psi.n_sites();
  std::vector<Eigen::Vector3d> c(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    const auto p = noise.coupling[static_cast<std::size_t>(x)].pauli();
    c[static_cast<std::size_t>(x)] = {p.vector[0], p.vector[1], p.vector[2]};
  }
  double total = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (g(x, y) == 0.0) continue;
      total += g(x, y) * c[static_cast<std::size_t>(x)].dot(cov.site_block(x, y) *
                                                            c[static_cast<std::size_t>(y)]);
    }
  }
  return noise.kappa * total;
}

double max_stable_dt(const NoiseModel& noise) {
  const double denom = noise.kappa * noise.lattice.n_sites * noise.kernel_lambda_max();
  return denom > 0.0 ? 0.1 / denom : std::numeric_limits<double>::infinity();
}

FidelitySeries evolve_noisy(const StateVector& psi0, const Hamiltonian* hamiltonian,
                            const NoiseModel& noise, const TrajectoryConfig& config) {
  noise.validate();
  psi0.require_normalized();
  const int n = psi0.n_sites();
  if (noise.lattice.n_sites != n) {
    fail(ErrorKind::kArgument, "noise model and state live on different lattices");
  }
  if (hamiltonian != nullptr && hamiltonian->lattice().n_sites != n) {
    fail(ErrorKind::kArgument, "Hamiltonian and state live on different lattices");
  }
  if (config.n_traj < kMinTrajectories) {
    fail(ErrorKind::kArgument, "n_traj must be >= " + std::to_string(kMinTrajectories));
  }
  if (!(config.dt > 0.0) || !(config.horizon > 0.0)) {
    fail(ErrorKind::kArgument, "dt and horizon must be positive");
  }
  const double dt_max = max_stable_dt(noise);
  if (config.dt > dt_max * (1.0 + 1e-12)) {
    fail(ErrorKind::kArgument, "dt=" + std::to_string(config.dt) +
                                   " violates the stability bound 0.1/(kappa N lambda_g) = " +
                                   std::to_string(dt_max));
  }
  if (config.keep_density && n > kDensityMatrixMaxSites) {
    fail(ErrorKind::kCapability, "ensemble density matrix limited to N <= " +
                                     std::to_string(kDensityMatrixMaxSites));
  }
  const auto n_steps = static_cast<int>(std::llround(config.horizon / config.dt));
  if (n_steps < 1) fail(ErrorKind::kArgument, "horizon shorter than one time step");

  const std::size_t dim = psi0.dim();
  const std::size_t n_traj = static_cast<std::size_t>(config.n_traj);
  const std::size_t stride = static_cast<std::size_t>(n_steps) + 1;
  const Eigen::MatrixXd factor = kernel_factor(noise.kernel_matrix());
  const double amplitude = std::sqrt(noise.kappa * config.dt);
  std::vector<PauliDecomposition> coupling;
  for (const LocalOperator& a : noise.coupling) coupling.push_back(a.pauli());
  const bool diagonal = noise.is_diagonal();

  std::vector<double> fidelity(n_traj * stride);
  std::vector<double> drift(n_traj, 0.0);
  std::vector<std::vector<Complex>> finals(config.keep_density ? n_traj : 0);
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto psi0_amps = psi0.amplitudes();

#pragma omp parallel
  {
    std::vector<Complex> psi(dim);
    std::vector<Complex> phase(diagonal ? dim : 0);
    Eigen::VectorXd xi(n);
#pragma omp for schedule(dynamic, 4)
    for (Index k = 0; k < static_cast<Index>(n_traj); ++k) {
      if (failed.load()) continue;
      try {
        const NoiseStream rng(config.seed, static_cast<std::uint64_t>(k));
        std::copy(psi0_amps.begin(), psi0_amps.end(), psi.begin());
        double* f = &fidelity[static_cast<std::size_t>(k) * stride];
        f[0] = std::norm(kernels::parallel::inner_product(psi0_amps, psi));
        for (int step = 1; step <= n_steps; ++step) {
          if (hamiltonian != nullptr) psi = evolve_krylov(*hamiltonian, psi, 0.5 * config.dt);
          for (int x = 0; x < n; ++x) {
            xi(x) = rng.normal(static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(x));
          }
          const Eigen::VectorXd w = amplitude * (factor * xi);
          if (diagonal) {
            apply_diagonal_noise(coupling, w, phase, psi);
          } else {
            for (int x = 0; x < n; ++x) {
              kernels::serial::apply_single_site_inplace(
                  noise_unitary(coupling[static_cast<std::size_t>(x)], w(x)), x, psi);
            }
          }
          if (hamiltonian != nullptr) psi = evolve_krylov(*hamiltonian, psi, 0.5 * config.dt);
          f[step] = std::norm(kernels::parallel::inner_product(psi0_amps, psi));
        }
        drift[static_cast<std::size_t>(k)] = std::abs(kernels::parallel::norm_squared(psi) - 1.0);
        if (config.keep_density) finals[static_cast<std::size_t>(k)] = psi;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  }
  if (error) std::rethrow_exception(error);

  FidelitySeries out;
  out.n_traj = config.n_traj;
  out.max_norm_drift = *std::max_element(drift.begin(), drift.end());
  if (out.max_norm_drift > 1e-8) {
    fail(ErrorKind::kNumerical,
         "trajectory norm drifted by " + std::to_string(out.max_norm_drift));
  }
  out.time.resize(stride);
  out.mean.resize(stride);
  out.std_error.resize(stride);
  const int n_batches = std::clamp(config.n_batches, 2, config.n_traj);
  out.batch_mean.assign(static_cast<std::size_t>(n_batches), std::vector<double>(stride));
  std::vector<double> column(n_traj);
  for (std::size_t s = 0; s < stride; ++s) {
    out.time[s] = static_cast<double>(s) * config.dt;
    for (std::size_t k = 0; k < n_traj; ++k) column[k] = fidelity[k * stride + s];
    const double mean = kernels::pairwise_sum(column) / static_cast<double>(n_traj);
    double ss = 0.0;
    for (double v : column) ss += (v - mean) * (v - mean);
    out.mean[s] = mean;
    out.std_error[s] = std::sqrt(ss / static_cast<double>(n_traj - 1) / static_cast<double>(n_traj));
    for (int b = 0; b < n_batches; ++b) {
      const std::size_t begin = n_traj * static_cast<std::size_t>(b) / static_cast<std::size_t>(n_batches);
      const std::size_t end = n_traj * static_cast<std::size_t>(b + 1) / static_cast<std::size_t>(n_batches);
      out.batch_mean[static_cast<std::size_t>(b)][s] =
          kernels::pairwise_sum(std::span<const double>(column).subspan(begin, end - begin)) /
          static_cast<double>(end - begin);
    }
  }

  if (config.keep_density) {
    constexpr std::size_t kBlock = 64;
    const std::size_t n_blocks = (n_traj + kBlock - 1) / kBlock;
    const auto d = static_cast<Eigen::Index>(dim);
    std::vector<Eigen::MatrixXcd> partial(n_blocks, Eigen::MatrixXcd::Zero(d, d));
#pragma omp parallel for schedule(static)
    for (Index b = 0; b < static_cast<Index>(n_blocks); ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
      const std::size_t end = std::min(n_traj, begin + kBlock);
      for (std::size_t k = begin; k < end; ++k) {
        const Eigen::Map<const Eigen::VectorXcd> v(finals[k].data(), d);
        partial[static_cast<std::size_t>(b)].noalias() += v * v.adjoint();
      }
    }
    // Pairwise combination in a fixed tree.
    for (std::size_t width = 1; width < n_blocks; width *= 2) {
      for (std::size_t i = 0; i + width < n_blocks; i += 2 * width) partial[i] += partial[i + width];
    }
    out.density = partial[0] / static_cast<double>(n_traj);
  }
  return out;
}

RateEstimate estimate_initial_rate(const FidelitySeries& series, double window_fraction) {
  if (series.time.size() < 3) fail(ErrorKind::kArgument, "fidelity series too short");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    fail(ErrorKind::kArgument, "window fraction must lie in (0, 1]");
  }
  const double window = window_fraction * series.time.back();
  std::vector<std::size_t> idx;
  for (std::size_t s = 1; s < series.time.size(); ++s) {
    if (series.time[s] <= window * (1.0 + 1e-12) || idx.size() < 2) idx.push_back(s);
    else break;
  }
  const auto neg_log = [](double f) { return -std::log(std::max(f, 1e-300)); };
  std::vector<double> t, y, w;
  bool weighted = true;
  for (std::size_t s : idx) {
    t.push_back(series.time[s]);
    y.push_back(neg_log(series.mean[s]));
    const double sigma = series.std_error[s] / std::max(series.mean[s], 1e-300);
    if (!(sigma > 0.0)) weighted = false;
    w.push_back(sigma > 0.0 ? 1.0 / (sigma * sigma) : 1.0);
  }
  if (!weighted) std::fill(w.begin(), w.end(), 1.0);

  RateEstimate est;
  est.gamma = slope_through_origin(t, y, w);
  est.n_points = static_cast<int>(t.size());
  est.window = t.back();

  const std::size_t n_batches = series.batch_mean.size();
  if (n_batches >= 2) {
    std::vector<double> gammas;
    for (const auto& batch : series.batch_mean) {
      std::vector<double> yb;
      for (std::size_t s : idx) yb.push_back(neg_log(batch[s]));
      gammas.push_back(slope_through_origin(t, yb, w));
    }
    double mean = 0.0;
    for (double g : gammas) mean += g;
    mean /= static_cast<double>(n_batches);
    double ss = 0.0;
    for (double g : gammas) ss += (g - mean) * (g - mean);
    est.std_error = std::sqrt(ss / static_cast<double>(n_batches * (n_batches - 1)));
  }
  return est;
}

DecoherenceFit fit_gamma_scaling(std::span<const SizePoint> points) {
  if (distinct_sizes(points) < 3) {
    fail(ErrorKind::kArgument, "Gamma scaling fit needs at least 3 distinct sizes");
  }
  for (const SizePoint& p : points) {
    if (!(p.value > 0.0)) {
      fail(ErrorKind::kArgument, "non-positive decoherence rate at N=" + std::to_string(p.n_sites));
    }
  }
  const LineFit fit = fit_log_log(points);
  DecoherenceFit out;
  out.gamma_per_size.assign(points.begin(), points.end());
  out.K = std::exp(fit.intercept);
  out.one_plus_delta = fit.slope;
  out.residual = fit.residual;
  out.fragile = fit.slope >= kFragileExponent;
  return out;
}

const char* to_string(PurePhaseMethod method) noexcept {
  return method == PurePhaseMethod::kDoubletSuperposition ? "doublet-superposition"
                                                          : "sb-field-limit";
}

PurePhaseMethod parse_pure_phase_method(const std::string& name) {
  if (name == "doublet-superposition" || name == "doublet") {
    return PurePhaseMethod::kDoubletSuperposition;
  }
  if (name == "sb-field-limit" || name == "sb-field") return PurePhaseMethod::kSymmetryBreakingField;
  fail(ErrorKind::kArgument, "unknown pure-phase method '" + name + "'");
}

PurePhaseResult pure_phase_vacuum(const HamiltonianSpec& spec, PurePhaseMethod method,
                                  const LanczosOptions& options) {
  if (spec.model != Model::kTransverseIsing) {
    fail(ErrorKind::kArgument, "pure-phase vacua are defined for the transverse-field Ising chain");
  }
  const bool paramagnetic = !(std::abs(spec.h) < std::abs(spec.J));
  if (method == PurePhaseMethod::kSymmetryBreakingField) {
    HamiltonianSpec biased = spec;
    biased.B = kSymmetryBreakingFieldRatio * spec.J;
    const Hamiltonian h(biased);
    Eigenpair g = lowest_eigenpair(h, Sector::kAny, {}, options);
    const Hamiltonian h0(spec);
    const double m = magnetization(g.state);
    return PurePhaseResult{g.state, h0.expectation(g.state), m, paramagnetic};
  }
  if (spec.B != 0.0) {
    fail(ErrorKind::kArgument, "doublet superposition needs B = 0 (spin-flip symmetric H)");
  }
  const Hamiltonian h(spec);
  const Eigenpair even = lowest_eigenpair(h, Sector::kEven, {}, options);
  const Eigenpair odd = lowest_eigenpair(h, Sector::kOdd, {}, options);
  // <M> of (e + u o)/sqrt2 is Re(u <e|M|o>); pick the phase u that maximizes it.
  const AdditiveOperator m_op = AdditiveOperator::uniform(spec.lattice, Axis::kZ);
  const StateVector m_odd = apply_additive(m_op, odd.state);
  const Complex overlap =
      kernels::parallel::inner_product(even.state.amplitudes(), m_odd.amplitudes());
  const Complex u = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Complex(1.0);
  std::vector<Complex> amps(even.state.dim());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = (even.state[i] + u * odd.state[i]) * M_SQRT1_2;
  }
  StateVector state = StateVector::normalized(spec.lattice, std::move(amps));
  const double energy = h.expectation(state);
  const double m = magnetization(state);
  return PurePhaseResult{std::move(state), energy, m, paramagnetic};
}

}  // namespace macrostab
