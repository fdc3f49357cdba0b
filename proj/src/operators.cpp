#include "macrostab/operators.hpp"

#include <cmath>
#include <string>

#include "macrostab/error.hpp"

namespace macrostab {

Matrix2 pauli_matrix(Axis axis) noexcept {
  const Complex i{0.0, 1.0};
  switch (axis) {
    case Axis::kX: return {0.0, 1.0, 1.0, 0.0};
    case Axis::kY: return {0.0, -i, i, 0.0};
    case Axis::kZ: return {1.0, 0.0, 0.0, -1.0};
  }
  return {};
}

Matrix2 identity_matrix() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

Matrix2 matrix_from_pauli(const PauliDecomposition& c) noexcept {
  const auto& [x, y, z] = c.vector;
  return {Complex(c.identity + z, 0.0), Complex(x, -y), Complex(x, y),
          Complex(c.identity - z, 0.0)};
}

bool is_hermitian(const Matrix2& m, double tolerance) noexcept {
  return std::abs(m[0].imag()) <= tolerance && std::abs(m[3].imag()) <= tolerance &&
         std::abs(m[1] - std::conj(m[2])) <= tolerance;
}

LocalOperator::LocalOperator(int site, const Matrix2& matrix) : site_(site), matrix_(matrix) {
  if (site < 0) fail(ErrorKind::kArgument, "negative site index");
  if (!is_hermitian(matrix)) {
    fail(ErrorKind::kArgument, "local operator at site " + std::to_string(site) +
                                   " is not Hermitian");
  }
}

LocalOperator LocalOperator::from_pauli(int site, const PauliDecomposition& coefficients) {
  return LocalOperator(site, matrix_from_pauli(coefficients));
}

PauliDecomposition LocalOperator::pauli() const noexcept {
  PauliDecomposition c;
  c.identity = 0.5 * (matrix_[0].real() + matrix_[3].real());
  c.vector[2] = 0.5 * (matrix_[0].real() - matrix_[3].real());
  // m[2] = x + i y (lower-left entry)
  c.vector[0] = 0.5 * (matrix_[2].real() + matrix_[1].real());
  c.vector[1] = 0.5 * (matrix_[2].imag() - matrix_[1].imag());
  return c;
}

LocalOperator pauli(const LatticeSpec& lattice, int site, Axis axis) {
  if (site < 0 || site >= lattice.n_sites) {
    fail(ErrorKind::kArgument, "site " + std::to_string(site) + " outside lattice of " +
                                   std::to_string(lattice.n_sites) + " sites");
  }
  return LocalOperator(site, pauli_matrix(axis));
}

AdditiveOperator::AdditiveOperator(LatticeSpec lattice, std::vector<LocalOperator> terms)
    : lattice_(lattice), terms_(std::move(terms)) {
  if (terms_.size() != static_cast<std::size_t>(lattice.n_sites)) {
    fail(ErrorKind::kArgument, "additive operator needs exactly one term per site");
  }
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].site() != static_cast<int>(k)) {
      fail(ErrorKind::kArgument, "additive operator term " + std::to_string(k) +
                                     " acts on site " + std::to_string(terms_[k].site()));
    }
  }
}

AdditiveOperator AdditiveOperator::uniform(const LatticeSpec& lattice, Axis axis) {
  std::vector<LocalOperator> terms;
  terms.reserve(static_cast<std::size_t>(lattice.n_sites));
  for (int x = 0; x < lattice.n_sites; ++x) terms.emplace_back(x, pauli_matrix(axis));
  return AdditiveOperator(lattice, std::move(terms));
}

AdditiveOperator AdditiveOperator::from_pauli_coefficients(const LatticeSpec& lattice,
                                                           std::span<const double> c) {
  const int n = lattice.n_sites;
  if (c.size() != static_cast<std::size_t>(3 * n)) {
    fail(ErrorKind::kArgument, "expected 3N Pauli coefficients");
  }
  std::vector<LocalOperator> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    PauliDecomposition d;
    for (int a = 0; a < 3; ++a) d.vector[a] = c[a * n + x];
    terms.push_back(LocalOperator::from_pauli(x, d));
  }
  return AdditiveOperator(lattice, std::move(terms));
}

}  // namespace macrostab
