#pragma once

#include <span>
#include <string>
#include <vector>

#include "macrostab/kernels.hpp"
#include "macrostab/lattice.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

enum class Model { kTransverseIsing, kXXZ };

const char* to_string(Model model) noexcept;
Model parse_model(const std::string& name);

// transverse-ising:
//   H = -J sum_<x,x+1> sz sz - h sum_x sx - B sum_x sz
// xxz:
//   H = J sum_<x,x+1> (sx sx + sy sy + Delta sz sz) - h sum_x sx - B sum_x sz
// Bonds follow the lattice geometry; a periodic chain of 2 sites keeps a
// single bond.
struct HamiltonianSpec {
  Model model = Model::kTransverseIsing;
  LatticeSpec lattice;
  double J = 1.0;
  double h = 0.0;
  double delta = 1.0;
  double B = 0.0;
};

std::vector<std::pair<int, int>> bonds(const LatticeSpec& lattice);

// Matrix-free Hermitian operator: a diagonal plus a list of bit-flip terms.
// Read-only after construction, so one instance can be shared across threads.
class Hamiltonian {
 public:
  // Validates finiteness of couplings and checks Hermiticity on random
  // vectors (ErrorKind::kInternal on failure).
  explicit Hamiltonian(HamiltonianSpec spec);

  const HamiltonianSpec& spec() const noexcept { return spec_; }
  const LatticeSpec& lattice() const noexcept { return spec_.lattice; }
  std::size_t dim() const noexcept { return diagonal_.size(); }

  // out = H in (OpenMP kernel).
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  // Same product through the serial reference kernel.
  void apply_serial(std::span<const Complex> in, std::span<Complex> out) const;

  double expectation(const StateVector& psi) const;
  // || H psi - E psi ||
  double residual(const StateVector& psi, double energy) const;

  // True when the global spin flip prod_x sx commutes with H (B == 0).
  bool has_spin_flip_symmetry() const noexcept { return spec_.B == 0.0; }

  std::span<const double> diagonal() const noexcept { return diagonal_; }
  std::span<const kernels::FlipTerm> flip_terms() const noexcept { return terms_; }

 private:
  HamiltonianSpec spec_;
  std::vector<double> diagonal_;
  std::vector<kernels::FlipTerm> terms_;
};

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec);

// Order parameter M = sum_x sz(x).
double magnetization(const StateVector& psi);

}  // namespace macrostab
