#include "macrostab/state.hpp"

#include <cmath>
#include <string>

#include "macrostab/error.hpp"
#include "macrostab/kernels.hpp"

namespace macrostab {

StateVector::StateVector(LatticeSpec lattice, std::vector<Complex> amplitudes)
    : lattice_(lattice) {
  if (amplitudes.size() != lattice.dim()) {
    fail(ErrorKind::kArgument, "expected " + std::to_string(lattice.dim()) +
                                   " amplitudes, got " + std::to_string(amplitudes.size()));
  }
  amplitudes_ = std::make_shared<const std::vector<Complex>>(std::move(amplitudes));
}

StateVector StateVector::normalized(LatticeSpec lattice, std::vector<Complex> amplitudes) {
  const double norm2 = kernels::parallel::norm_squared(amplitudes);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    fail(ErrorKind::kState, "cannot normalize a zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (Complex& a : amplitudes) a *= inv;
  return StateVector(lattice, std::move(amplitudes));
}

double StateVector::norm_squared() const { return kernels::parallel::norm_squared(*amplitudes_); }

bool StateVector::is_normalized(double tolerance) const {
  return std::abs(norm_squared() - 1.0) <= tolerance;
}

void StateVector::require_normalized() const {
  const double n2 = norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    fail(ErrorKind::kState, "state is not normalized (norm^2 = " + std::to_string(n2) + ")");
  }
}

StateVector make_product_state(const LatticeSpec& lattice, std::span<const BlochAngles> angles) {
  if (angles.size() != static_cast<std::size_t>(lattice.n_sites)) {
    fail(ErrorKind::kArgument, "need one (theta, phi) pair per site");
  }
  std::vector<std::array<Complex, 2>> site_amps;
  site_amps.reserve(angles.size());
  for (const BlochAngles& a : angles) {
    if (!std::isfinite(a.theta) || !std::isfinite(a.phi)) {
      fail(ErrorKind::kArgument, "Bloch angles must be finite");
    }
    site_amps.push_back({Complex(std::cos(a.theta / 2), 0.0),
                         std::polar(std::sin(a.theta / 2), a.phi)});
  }
  std::vector<Complex> amps(lattice.dim());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    Complex v{1.0, 0.0};
    for (int k = 0; k < lattice.n_sites; ++k) v *= site_amps[k][(i >> k) & 1];
    amps[i] = v;
  }
  return StateVector(lattice, std::move(amps));
}

StateVector make_product_state(const LatticeSpec& lattice, BlochAngles uniform) {
  std::vector<BlochAngles> angles(static_cast<std::size_t>(lattice.n_sites), uniform);
  return make_product_state(lattice, angles);
}

StateVector make_basis_state(const LatticeSpec& lattice, std::uint64_t index) {
  if (index >= lattice.dim()) fail(ErrorKind::kArgument, "basis index out of range");
  std::vector<Complex> amps(lattice.dim());
  amps[index] = 1.0;
  return StateVector(lattice, std::move(amps));
}

StateVector make_ghz(const LatticeSpec& lattice) {
  if (lattice.n_sites < 2) fail(ErrorKind::kSize, "GHZ state needs at least 2 sites");
  std::vector<Complex> amps(lattice.dim());
  amps.front() = M_SQRT1_2;
  amps.back() = M_SQRT1_2;
  return StateVector(lattice, std::move(amps));
}

StateVector make_dicke(const LatticeSpec& lattice, int k) {
  if (k < 0 || k > lattice.n_sites) {
    fail(ErrorKind::kArgument, "Dicke excitation count " + std::to_string(k) + " outside [0, " +
                                   std::to_string(lattice.n_sites) + "]");
  }
  std::vector<Complex> amps(lattice.dim());
  std::size_t count = 0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::popcount(i) == k) ++count;
  }
  const double a = 1.0 / std::sqrt(static_cast<double>(count));
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::popcount(i) == k) amps[i] = a;
  }
  return StateVector(lattice, std::move(amps));
}

}  // namespace macrostab
