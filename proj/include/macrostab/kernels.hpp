#pragma once

// State-vector inner loops. Every kernel exists twice:
//
//   kernels::serial    plain loops; the reference the tests check against.
//   kernels::parallel  OpenMP loops; what the library calls.
//
// Parallel reductions partition the index range into fixed blocks of
// kReductionBlock entries, sum each block in index order, then combine the
// block partials by pairwise summation. The partition does not depend on the
// thread count, so results are bit-identical for any OMP_NUM_THREADS.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "macrostab/types.hpp"

namespace macrostab::kernels {

inline constexpr std::size_t kReductionBlock = 1024;

// Tensor product of Pauli matrices. Acting on basis state |i>:
//   P|i> = i^{n_y} (-1)^{popcount(i & phase_mask)} |i ^ flip_mask>
// where flip_mask marks x/y sites and phase_mask marks y/z sites.
struct PauliString {
  std::uint64_t flip_mask = 0;
  std::uint64_t phase_mask = 0;
  int n_y = 0;

  static PauliString single(int site, Axis axis) noexcept;
  // Product of two single-site Paulis on distinct sites.
  static PauliString pair(int site_a, Axis axis_a, int site_b, Axis axis_b) noexcept;
};

// Off-diagonal Hamiltonian term: out[i] += coefficient * in[i ^ mask], applied
// to every row, or only to rows where the two bits of `mask` differ (XX + YY
// hopping).
struct FlipTerm {
  std::uint64_t mask = 0;
  double coefficient = 0.0;
  bool only_if_bits_differ = false;
};

// Pairwise sum of a span; fixed association order.
double pairwise_sum(std::span<const double> values) noexcept;
Complex pairwise_sum(std::span<const Complex> values) noexcept;

namespace serial {

void apply_single_site(const Matrix2& m, int site, std::span<const Complex> in,
                       std::span<Complex> out);
void apply_single_site_inplace(const Matrix2& m, int site, std::span<Complex> psi);
Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
double norm_squared(std::span<const Complex> psi);
Complex pauli_string_expectation(const PauliString& p, std::span<const Complex> psi);
void sparse_matvec(std::span<const double> diagonal, std::span<const FlipTerm> terms,
                   std::span<const Complex> in, std::span<Complex> out);

}  // namespace serial

namespace parallel {

void apply_single_site(const Matrix2& m, int site, std::span<const Complex> in,
                       std::span<Complex> out);
void apply_single_site_inplace(const Matrix2& m, int site, std::span<Complex> psi);
Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
double norm_squared(std::span<const Complex> psi);
Complex pauli_string_expectation(const PauliString& p, std::span<const Complex> psi);
void sparse_matvec(std::span<const double> diagonal, std::span<const FlipTerm> terms,
                   std::span<const Complex> in, std::span<Complex> out);

// y += alpha * x
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
void scale(Complex alpha, std::span<Complex> x);

}  // namespace parallel

// Thread-count override read from MACROSTAB_THREADS; returns the count in
// effect after the override (or the OpenMP default).
int configure_threads_from_env();
int max_threads();

}  // namespace macrostab::kernels
