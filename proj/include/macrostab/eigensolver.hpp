#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macrostab/hamiltonian.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

// Eigenspace of the global spin flip P = prod_x sx.
enum class Sector { kAny, kEven, kOdd };
const char* to_string(Sector sector) noexcept;

struct LanczosOptions {
  int krylov_dim = 90;
  int max_restarts = 200;
  double tolerance = 1e-9;  // on || H psi - E psi ||
  std::uint64_t seed = 0x1a2c'05ed'0000'0000ULL;
};

struct Eigenpair {
  double energy = 0.0;
  StateVector state;
  double residual = 0.0;
  Sector sector = Sector::kAny;
  int iterations = 0;
};

// Lowest eigenpair inside `sector`, orthogonal to every vector in `deflate`.
// Explicitly restarted Lanczos with full reorthogonalization; throws
// ErrorKind::kNumerical with the last residual when it does not converge.
// Requesting a parity sector of a Hamiltonian without spin-flip symmetry is an
// argument error.
Eigenpair lowest_eigenpair(const Hamiltonian& h, Sector sector,
                           std::span<const StateVector> deflate = {},
                           const LanczosOptions& options = {});

enum class Which { kLowest, kLowestTwo };

// Lowest one or two eigenpairs in ascending energy. When H commutes with the
// spin flip, each pair is a parity eigenstate, so a symmetric ground state has
// <M> = 0 even when the even/odd doublet is split by far less than the solver
// tolerance.
std::vector<Eigenpair> ground_state(const Hamiltonian& h, Which which,
                                    const LanczosOptions& options = {});

// exp(-i H tau)|psi> by Krylov projection; sub-steps until the Lanczos error
// estimate is below `tolerance`.
std::vector<Complex> evolve_krylov(const Hamiltonian& h, std::span<const Complex> psi, double tau,
                                   double tolerance = 1e-10);

}  // namespace macrostab
