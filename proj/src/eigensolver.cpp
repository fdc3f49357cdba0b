#include "macrostab/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "macrostab/error.hpp"
#include "macrostab/kernels.hpp"
#include "macrostab/rng.hpp"

namespace macrostab {
namespace {

using Vector = std::vector<Complex>;
namespace par = kernels::parallel;

void project_sector(Vector& v, Sector sector, std::uint64_t all_mask) {
  if (sector == Sector::kAny) return;
  const double sign = sector == Sector::kEven ? 1.0 : -1.0;
  for (std::uint64_t i = 0; i < v.size(); ++i) {
    const std::uint64_t j = i ^ all_mask;
    if (j < i) continue;
    const Complex a = v[i];
    const Complex b = v[j];
    v[i] = 0.5 * (a + sign * b);
    v[j] = 0.5 * (b + sign * a);
  }
}

void orthogonalize(Vector& w, std::span<const Vector> basis) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector& v : basis) par::axpy(-par::inner_product(v, w), v, w);
  }
}

void orthogonalize(Vector& w, std::span<const StateVector> basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const StateVector& v : basis) {
      par::axpy(-par::inner_product(v.amplitudes(), w), v.amplitudes(), w);
    }
  }
}

double norm(std::span<const Complex> v) { return std::sqrt(par::norm_squared(v)); }

Vector random_start(std::size_t dim, std::uint64_t seed, Sector sector) {
  const NoiseStream rng(seed, static_cast<std::uint64_t>(sector));
  Vector v(dim);
  for (std::uint32_t i = 0; i < dim; ++i) v[i] = rng.normal(0, i);
  return v;
}

}  // namespace

const char* to_string(Sector sector) noexcept {
  switch (sector) {
    case Sector::kAny: return "any";
    case Sector::kEven: return "even";
    case Sector::kOdd: return "odd";
  }
  return "?";
}

Eigenpair lowest_eigenpair(const Hamiltonian& h, Sector sector,
                           std::span<const StateVector> deflate,
                           const LanczosOptions& options) {
  if (sector != Sector::kAny && !h.has_spin_flip_symmetry()) {
    fail(ErrorKind::kArgument, "spin-flip sector requested for a Hamiltonian without the symmetry");
  }
  const std::size_t dim = h.dim();
  const std::uint64_t all = h.lattice().all_sites_mask();
  const int m_max = static_cast<int>(std::min<std::size_t>(options.krylov_dim, dim));

  Vector start = random_start(dim, options.seed, sector);
  double last_residual = std::numeric_limits<double>::infinity();
  int iterations = 0;

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    project_sector(start, sector, all);
    orthogonalize(start, deflate);
    const double n0 = norm(start);
    if (!(n0 > 1e-14)) {
      fail(ErrorKind::kNumerical, "Lanczos start vector vanished after projection (sector " +
                                      std::string(to_string(sector)) + ")");
    }
    par::scale(1.0 / n0, start);

    std::vector<Vector> basis;
    basis.reserve(static_cast<std::size_t>(m_max));
    basis.push_back(start);
    std::vector<double> alpha, beta;
    Vector w(dim);
    for (int j = 0; j < m_max; ++j) {
      h.apply(basis[static_cast<std::size_t>(j)], w);
      ++iterations;
      project_sector(w, sector, all);
      alpha.push_back(par::inner_product(basis[static_cast<std::size_t>(j)], w).real());
      orthogonalize(w, std::span<const Vector>(basis));
      orthogonalize(w, deflate);
      const double b = norm(w);
      if (j + 1 == m_max || b < 1e-12 * (1.0 + std::abs(alpha.back()))) break;
      beta.push_back(b);
      par::scale(1.0 / b, w);
      basis.push_back(w);
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd off(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index k = 0; k + 1 < m; ++k) off(k) = beta[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success) {
      fail(ErrorKind::kNumerical, "tridiagonal eigensolver failed");
    }
    Vector ritz(dim);
    for (Eigen::Index k = 0; k < m; ++k) {
      par::axpy(tri.eigenvectors()(k, 0), basis[static_cast<std::size_t>(k)], ritz);
    }
    project_sector(ritz, sector, all);
    orthogonalize(ritz, deflate);
    par::scale(1.0 / norm(ritz), ritz);

    StateVector state(h.lattice(), ritz);
    const double energy = h.expectation(state);
    last_residual = h.residual(state, energy);
    if (last_residual <= options.tolerance) {
      return Eigenpair{energy, std::move(state), last_residual, sector, iterations};
    }
    start = std::move(ritz);
  }
  fail(ErrorKind::kNumerical, "Lanczos did not converge: residual " +
                                  std::to_string(last_residual) + " after " +
                                  std::to_string(iterations) + " matrix-vector products");
}

std::vector<Eigenpair> ground_state(const Hamiltonian& h, Which which,
                                    const LanczosOptions& options) {
  const std::size_t wanted = which == Which::kLowest ? 1 : 2;
  std::vector<Eigenpair> candidates;
  const auto collect = [&](Sector sector) {
    Eigenpair first = lowest_eigenpair(h, sector, {}, options);
    const std::size_t sector_dim = sector == Sector::kAny ? h.dim() : h.dim() / 2;
    if (wanted == 2 && sector_dim >= 2) {
      const StateVector deflate[] = {first.state};
      candidates.push_back(lowest_eigenpair(h, sector, deflate, options));
    }
    candidates.push_back(std::move(first));
  };
  if (h.has_spin_flip_symmetry()) {
    collect(Sector::kEven);
    collect(Sector::kOdd);
  } else {
    collect(Sector::kAny);
  }
  // Ties within 1e-12 go to the even sector, then to discovery order.
  std::stable_sort(candidates.begin(), candidates.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (std::abs(a.energy - b.energy) > 1e-12) return a.energy < b.energy;
    return a.sector == Sector::kEven && b.sector != Sector::kEven;
  });
  if (candidates.size() > wanted) candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(wanted), candidates.end());
  return candidates;
}

std::vector<Complex> evolve_krylov(const Hamiltonian& h, std::span<const Complex> psi, double tau,
                                   double tolerance) {
  constexpr int kMaxKrylov = 40;
  Vector current(psi.begin(), psi.end());
  double remaining = tau;
  double step = tau;
  int guard = 0;
  while (std::abs(remaining) > 0.0) {
    if (++guard > 100000) fail(ErrorKind::kNumerical, "Krylov propagator made no progress");
    if (std::abs(step) > std::abs(remaining)) step = remaining;
    const double n0 = norm(current);
    if (n0 == 0.0) return current;

    std::vector<Vector> basis;
    basis.emplace_back(current);
    par::scale(1.0 / n0, basis[0]);
    std::vector<double> alpha, beta;
    Vector w(current.size());
    bool invariant = false;
    const int m_max = static_cast<int>(std::min<std::size_t>(kMaxKrylov, current.size()));
    double last_beta = 0.0;
    for (int j = 0; j < m_max; ++j) {
      h.apply(basis.back(), w);
      alpha.push_back(par::inner_product(basis.back(), w).real());
      orthogonalize(w, std::span<const Vector>(basis));
      last_beta = norm(w);
      if (last_beta < 1e-13) {
        invariant = true;
        break;
      }
      if (j + 1 == m_max) break;
      beta.push_back(last_beta);
      par::scale(1.0 / last_beta, w);
      basis.push_back(w);
    }
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd off(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index k = 0; k + 1 < m; ++k) off(k) = beta[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);

    // c = exp(-i T step) e_1
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const Complex phase = std::exp(Complex(0.0, -tri.eigenvalues()(k) * step));
      c += tri.eigenvectors()(0, k) * phase * tri.eigenvectors().col(k).cast<Complex>();
    }
    const double error = invariant ? 0.0 : last_beta * std::abs(c(m - 1)) * std::abs(step);
    if (error > tolerance) {
      step *= 0.5;
      continue;
    }
    Vector next(current.size());
    for (Eigen::Index k = 0; k < m; ++k) {
      par::axpy(n0 * c(k), basis[static_cast<std::size_t>(k)], next);
    }
    current = std::move(next);
    remaining -= step;
    if (std::abs(remaining) < 1e-15 * std::abs(tau)) break;
  }
  return current;
}

}  // namespace macrostab
