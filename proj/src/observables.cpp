#include "macrostab/observables.hpp"

#include <cmath>
#include <string>

#include "macrostab/error.hpp"
#include "macrostab/kernels.hpp"

namespace macrostab {
namespace {

void check_site(const LocalOperator& op, const StateVector& psi) {
  if (op.site() >= psi.n_sites()) {
    fail(ErrorKind::kArgument, "operator site " + std::to_string(op.site()) +
                                   " outside lattice of " + std::to_string(psi.n_sites()) +
                                   " sites");
  }
}

double real_checked(Complex value) {
  if (std::abs(value.imag()) > 1e-8) {
    fail(ErrorKind::kInternal,
         "expectation of Hermitian operator has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

StateVector apply_local(const LocalOperator& op, const StateVector& psi) {
  check_site(op, psi);
  std::vector<Complex> out(psi.dim());
  kernels::parallel::apply_single_site(op.matrix(), op.site(), psi.amplitudes(), out);
  return StateVector(psi.lattice(), std::move(out));
}

StateVector apply_additive(const AdditiveOperator& op, const StateVector& psi) {
  if (op.lattice().n_sites != psi.n_sites()) {
    fail(ErrorKind::kArgument, "additive operator and state live on different lattices");
  }
  std::vector<Complex> out(psi.dim());
  std::vector<Complex> scratch(psi.dim());
  for (const LocalOperator& term : op.terms()) {
    kernels::parallel::apply_single_site(term.matrix(), term.site(), psi.amplitudes(), scratch);
    kernels::parallel::axpy(1.0, scratch, out);
  }
  return StateVector(psi.lattice(), std::move(out));
}

double expectation(const LocalOperator& op, const StateVector& psi) {
  psi.require_normalized();
  const StateVector phi = apply_local(op, psi);
  return real_checked(kernels::parallel::inner_product(psi.amplitudes(), phi.amplitudes()));
}

double expectation(const AdditiveOperator& op, const StateVector& psi) {
  psi.require_normalized();
  const StateVector phi = apply_additive(op, psi);
  return real_checked(kernels::parallel::inner_product(psi.amplitudes(), phi.amplitudes()));
}

double additive_variance(const AdditiveOperator& op, const StateVector& psi) {
  psi.require_normalized();
  const StateVector phi = apply_additive(op, psi);
  const double second = kernels::parallel::norm_squared(phi.amplitudes());
  const double first =
      real_checked(kernels::parallel::inner_product(psi.amplitudes(), phi.amplitudes()));
  const double variance = second - first * first;
  return variance < 0.0 ? 0.0 : variance;
}

PauliMoments compute_pauli_moments(const StateVector& psi) {
  psi.require_normalized();
  const int n = psi.n_sites();
  const int n3 = 3 * n;
  PauliMoments m;
  m.n_sites = n;
  m.mean.assign(static_cast<std::size_t>(n3), 0.0);
  m.two_point.assign(static_cast<std::size_t>(n3) * n3, 0.0);
  const auto amps = psi.amplitudes();
  for (int a = 0; a < 3; ++a) {
    for (int x = 0; x < n; ++x) {
      const auto p = kernels::PauliString::single(x, static_cast<Axis>(a));
      m.mean[PauliMoments::index(x, a, n)] =
          real_checked(kernels::parallel::pauli_string_expectation(p, amps));
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const auto p = kernels::PauliString::pair(x, static_cast<Axis>(a), y, static_cast<Axis>(b));
          const double v = real_checked(kernels::parallel::pauli_string_expectation(p, amps));
          const int i = PauliMoments::index(x, a, n);
          const int j = PauliMoments::index(y, b, n);
          m.two_point[static_cast<std::size_t>(i) * n3 + j] = v;
          m.two_point[static_cast<std::size_t>(j) * n3 + i] = v;
        }
      }
    }
  }
  return m;
}

Mixture Mixture::make(std::vector<double> weights, std::vector<StateVector> states) {
  if (weights.size() != states.size() || states.empty()) {
    fail(ErrorKind::kArgument, "mixture needs one weight per state and at least one state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorKind::kArgument, "mixture weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) fail(ErrorKind::kArgument, "mixture weights sum to zero");
  for (double& w : weights) w /= total;
  for (const StateVector& s : states) {
    if (!(s.lattice() == states.front().lattice())) {
      fail(ErrorKind::kArgument, "mixture components live on different lattices");
    }
    s.require_normalized();
  }
  return Mixture{std::move(weights), std::move(states)};
}

PauliMoments compute_pauli_moments(const Mixture& rho) {
  PauliMoments total;
  for (std::size_t k = 0; k < rho.states.size(); ++k) {
    const PauliMoments m = compute_pauli_moments(rho.states[k]);
    if (k == 0) {
      total.n_sites = m.n_sites;
      total.mean.assign(m.mean.size(), 0.0);
      total.two_point.assign(m.two_point.size(), 0.0);
    }
    for (std::size_t i = 0; i < m.mean.size(); ++i) total.mean[i] += rho.weights[k] * m.mean[i];
    for (std::size_t i = 0; i < m.two_point.size(); ++i) {
      total.two_point[i] += rho.weights[k] * m.two_point[i];
    }
  }
  return total;
}

}  // namespace macrostab
