#include "macrostab/hamiltonian.hpp"

#include <bit>
#include <cmath>

#include "macrostab/error.hpp"
#include "macrostab/observables.hpp"
#include "macrostab/rng.hpp"

namespace macrostab {

const char* to_string(Model model) noexcept {
  return model == Model::kTransverseIsing ? "transverse-ising" : "xxz";
}

Model parse_model(const std::string& name) {
  if (name == "transverse-ising" || name == "tfim") return Model::kTransverseIsing;
  if (name == "xxz") return Model::kXXZ;
  fail(ErrorKind::kArgument, "unsupported model '" + name + "'");
}

std::vector<std::pair<int, int>> bonds(const LatticeSpec& lattice) {
  std::vector<std::pair<int, int>> out;
  const int n = lattice.n_sites;
  for (int x = 0; x + 1 < n; ++x) out.emplace_back(x, x + 1);
  if (lattice.geometry == Geometry::kPeriodicChain && n > 2) out.emplace_back(n - 1, 0);
  return out;
}

Hamiltonian::Hamiltonian(HamiltonianSpec spec) : spec_(spec) {
  for (double c : {spec.J, spec.h, spec.delta, spec.B}) {
    if (!std::isfinite(c)) fail(ErrorKind::kArgument, "Hamiltonian couplings must be finite");
  }
  const int n = spec.lattice.n_sites;
  const std::size_t dim = spec.lattice.dim();
  const auto bond_list = bonds(spec.lattice);
  const double zz = spec.model == Model::kTransverseIsing ? -spec.J : spec.J * spec.delta;

  diagonal_.assign(dim, 0.0);
  for (std::uint64_t i = 0; i < dim; ++i) {
    double e = 0.0;
    for (const auto& [x, y] : bond_list) {
      const bool same = ((i >> x) & 1) == ((i >> y) & 1);
      e += same ? zz : -zz;
    }
    const int down = std::popcount(i);
    e -= spec.B * static_cast<double>(n - 2 * down);
    diagonal_[i] = e;
  }
  if (spec.h != 0.0) {
    for (int x = 0; x < n; ++x) terms_.push_back({std::uint64_t{1} << x, -spec.h, false});
  }
  if (spec.model == Model::kXXZ && spec.J != 0.0) {
    // sx sx + sy sy = 2 (s+ s- + s- s+): flips an anti-aligned pair with amplitude 2.
    for (const auto& [x, y] : bond_list) {
      terms_.push_back({(std::uint64_t{1} << x) | (std::uint64_t{1} << y), 2.0 * spec.J, true});
    }
  }

  // Hermiticity on random vectors: <u, H v> == <H u, v>.
  const NoiseStream rng(0x5eed'4a11'0000'0001ULL, 0);
  std::vector<Complex> u(dim), v(dim), hu(dim), hv(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    u[i] = {rng.normal(0, 2 * i), rng.normal(0, 2 * i + 1)};
    v[i] = {rng.normal(1, 2 * i), rng.normal(1, 2 * i + 1)};
  }
  apply(u, hu);
  apply(v, hv);
  const Complex lhs = kernels::parallel::inner_product(u, hv);
  const Complex rhs = kernels::parallel::inner_product(hu, v);
  const double scale = std::sqrt(kernels::parallel::norm_squared(hu) *
                                 kernels::parallel::norm_squared(v)) + 1.0;
  if (std::abs(lhs - rhs) > 1e-12 * scale) {
    fail(ErrorKind::kInternal, "Hamiltonian failed the Hermiticity check");
  }
}

void Hamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  kernels::parallel::sparse_matvec(diagonal_, terms_, in, out);
}

void Hamiltonian::apply_serial(std::span<const Complex> in, std::span<Complex> out) const {
  kernels::serial::sparse_matvec(diagonal_, terms_, in, out);
}

double Hamiltonian::expectation(const StateVector& psi) const {
  psi.require_normalized();
  std::vector<Complex> hpsi(psi.dim());
  apply(psi.amplitudes(), hpsi);
  return kernels::parallel::inner_product(psi.amplitudes(), hpsi).real();
}

double Hamiltonian::residual(const StateVector& psi, double energy) const {
  std::vector<Complex> hpsi(psi.dim());
  apply(psi.amplitudes(), hpsi);
  kernels::parallel::axpy(-energy, psi.amplitudes(), hpsi);
  return std::sqrt(kernels::parallel::norm_squared(hpsi));
}

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec) { return Hamiltonian(spec); }

double magnetization(const StateVector& psi) {
  return expectation(AdditiveOperator::uniform(psi.lattice(), Axis::kZ), psi);
}

}  // namespace macrostab
