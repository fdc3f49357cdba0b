#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "macrostab/lattice.hpp"
#include "macrostab/types.hpp"

namespace macrostab {

// Pure state of N spin-1/2 sites stored as 2^N dense amplitudes.
//
// Basis convention: bit k of the index is site k; bit value 0 is sigma_z = +1
// ("up"), bit value 1 is sigma_z = -1 ("down").
//
// Amplitudes are held behind a shared const buffer, so copies are cheap and a
// published state can be read from any thread. There are no mutators; every
// transformation builds a new StateVector.
class StateVector {
 public:
  // Takes the amplitudes as given. Only the count is validated; the result may
  // be unnormalized (e.g. the output of apply_local).
  StateVector(LatticeSpec lattice, std::vector<Complex> amplitudes);

  // Rescales to unit norm. Throws ErrorKind::kState for a zero vector.
  static StateVector normalized(LatticeSpec lattice, std::vector<Complex> amplitudes);

  const LatticeSpec& lattice() const noexcept { return lattice_; }
  int n_sites() const noexcept { return lattice_.n_sites; }
  std::size_t dim() const noexcept { return amplitudes_->size(); }

  std::span<const Complex> amplitudes() const noexcept { return *amplitudes_; }
  Complex operator[](std::size_t index) const { return (*amplitudes_)[index]; }

  double norm_squared() const;
  bool is_normalized(double tolerance = kNormTolerance) const;
  // Throws ErrorKind::kState when |norm^2 - 1| exceeds kNormTolerance.
  void require_normalized() const;

  std::vector<Complex> to_vector() const { return *amplitudes_; }

 private:
  LatticeSpec lattice_;
  std::shared_ptr<const std::vector<Complex>> amplitudes_;
};

struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

// Tensor product of cos(theta/2)|up> + e^{i phi} sin(theta/2)|down> per site.
StateVector make_product_state(const LatticeSpec& lattice, std::span<const BlochAngles> angles);
StateVector make_product_state(const LatticeSpec& lattice, BlochAngles uniform);

StateVector make_basis_state(const LatticeSpec& lattice, std::uint64_t index);

// (|all-up> + |all-down>)/sqrt(2). Requires N >= 2.
StateVector make_ghz(const LatticeSpec& lattice);

// Equal superposition of all basis states with exactly k down spins.
StateVector make_dicke(const LatticeSpec& lattice, int k);

}  // namespace macrostab
