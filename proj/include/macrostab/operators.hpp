#pragma once

#include <array>
#include <span>
#include <vector>

#include "macrostab/lattice.hpp"
#include "macrostab/types.hpp"

namespace macrostab {

// Real coefficients of a Hermitian 2x2 matrix in the basis {1, sx, sy, sz}.
struct PauliDecomposition {
  double identity = 0.0;
  std::array<double, 3> vector{};  // (x, y, z)
};

Matrix2 pauli_matrix(Axis axis) noexcept;
Matrix2 identity_matrix() noexcept;
Matrix2 matrix_from_pauli(const PauliDecomposition& coefficients) noexcept;
bool is_hermitian(const Matrix2& m, double tolerance = kHermitianTolerance) noexcept;

// A Hermitian operator supported on a single site.
class LocalOperator {
 public:
  // Throws ErrorKind::kArgument when the matrix is not Hermitian or site < 0.
  LocalOperator(int site, const Matrix2& matrix);

  static LocalOperator from_pauli(int site, const PauliDecomposition& coefficients);

  int site() const noexcept { return site_; }
  const Matrix2& matrix() const noexcept { return matrix_; }
  PauliDecomposition pauli() const noexcept;

 private:
  int site_;
  Matrix2 matrix_;
};

// Standard Pauli matrix at `site`; throws ErrorKind::kArgument when the site is
// outside the lattice.
LocalOperator pauli(const LatticeSpec& lattice, int site, Axis axis);

// A = sum_x a(x), one term per site (a term may be the zero matrix).
class AdditiveOperator {
 public:
  // terms[k] must act on site k. Throws ErrorKind::kArgument otherwise.
  AdditiveOperator(LatticeSpec lattice, std::vector<LocalOperator> terms);

  // sum_x sigma^axis(x)
  static AdditiveOperator uniform(const LatticeSpec& lattice, Axis axis);

  // sum_{x, alpha} c[alpha * N + x] sigma^alpha(x); `coefficients` has 3N entries.
  static AdditiveOperator from_pauli_coefficients(const LatticeSpec& lattice,
                                                  std::span<const double> coefficients);

  const LatticeSpec& lattice() const noexcept { return lattice_; }
  const std::vector<LocalOperator>& terms() const noexcept { return terms_; }

 private:
  LatticeSpec lattice_;
  std::vector<LocalOperator> terms_;
};

}  // namespace macrostab
