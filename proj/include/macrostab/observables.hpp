#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "macrostab/operators.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

// (op (x) identity elsewhere)|psi>; unnormalized. Input is untouched.
StateVector apply_local(const LocalOperator& op, const StateVector& psi);

// A|psi> for an additive operator; unnormalized.
StateVector apply_additive(const AdditiveOperator& op, const StateVector& psi);

// <psi|O|psi> for Hermitian O. Throws kState for a non-normalized psi and
// kInternal if the imaginary part exceeds 1e-8.
double expectation(const LocalOperator& op, const StateVector& psi);
double expectation(const AdditiveOperator& op, const StateVector& psi);

// <A^2> - <A>^2 computed from |phi> = A|psi> as <phi|phi> - <psi|phi>^2,
// clamped at zero.
double additive_variance(const AdditiveOperator& op, const StateVector& psi);

// Single-site Pauli means and two-point products of a state.
//   mean(alpha, x)               = <sigma^alpha(x)>
//   two_point(alpha*N+x, beta*N+y) = <sigma^alpha(x) sigma^beta(y)>, x != y
// Same-site entries of two_point are left at zero.
struct PauliMoments {
  int n_sites = 0;
  std::vector<double> mean;       // 3N, axis-major
  std::vector<double> two_point;  // (3N)^2, row-major, axis-major indices

  static int index(int site, int axis, int n_sites) noexcept { return axis * n_sites + site; }
  double mean_of(int site, int axis) const noexcept { return mean[index(site, axis, n_sites)]; }
  double product(int x, int alpha, int y, int beta) const noexcept {
    const int n3 = 3 * n_sites;
    return two_point[index(x, alpha, n_sites) * n3 + index(y, beta, n_sites)];
  }
};

PauliMoments compute_pauli_moments(const StateVector& psi);

// Convex mixture sum_k w_k |psi_k><psi_k| of pure states on one lattice.
struct Mixture {
  std::vector<double> weights;
  std::vector<StateVector> states;

  // Validates equal lattices, non-negative weights and renormalizes weights.
  static Mixture make(std::vector<double> weights, std::vector<StateVector> states);
};

PauliMoments compute_pauli_moments(const Mixture& rho);

}  // namespace macrostab
