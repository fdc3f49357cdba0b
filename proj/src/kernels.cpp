#include "macrostab/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace macrostab::kernels {
namespace {

using Index = std::int64_t;

// Inserts a zero bit at position `site` into the (n-1)-bit counter i.
inline std::uint64_t insert_zero_bit(std::uint64_t i, int site) noexcept {
  const std::uint64_t low = (std::uint64_t{1} << site) - 1;
  return ((i & ~low) << 1) | (i & low);
}

inline double parity_sign(std::uint64_t bits) noexcept {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

inline Complex i_power(int n) noexcept {
  switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

template <class T>
T pairwise(std::span<const T> v) noexcept {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

// Deterministic parallel sum of term(i) over [0, n).
template <class T, class F>
T blocked_sum(std::size_t n, F&& term) {
  const std::size_t n_blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(n_blocks);
#pragma omp parallel for schedule(static) if (n_blocks > 1)
  for (Index b = 0; b < static_cast<Index>(n_blocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    T acc{};
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  return pairwise(std::span<const T>(partial));
}

inline constexpr std::size_t kParallelThreshold = 2048;

}  // namespace

PauliString PauliString::single(int site, Axis axis) noexcept {
  PauliString p;
  const std::uint64_t bit = std::uint64_t{1} << site;
  if (axis != Axis::kZ) p.flip_mask |= bit;
  if (axis != Axis::kX) p.phase_mask |= bit;
  if (axis == Axis::kY) p.n_y = 1;
  return p;
}

PauliString PauliString::pair(int site_a, Axis axis_a, int site_b, Axis axis_b) noexcept {
  const PauliString a = single(site_a, axis_a);
  const PauliString b = single(site_b, axis_b);
  return {a.flip_mask | b.flip_mask, a.phase_mask | b.phase_mask, a.n_y + b.n_y};
}

double pairwise_sum(std::span<const double> values) noexcept { return pairwise(values); }
Complex pairwise_sum(std::span<const Complex> values) noexcept { return pairwise(values); }

// ---------------------------------------------------------------------------
namespace serial {

void apply_single_site(const Matrix2& m, int site, std::span<const Complex> in,
                       std::span<Complex> out) {
  const std::uint64_t bit = std::uint64_t{1} << site;
  for (std::uint64_t i = 0; i < in.size(); ++i) {
    const bool down = (i & bit) != 0;
    const std::uint64_t partner = i ^ bit;
    // Row index of i in the 2x2 block is its own bit value.
    out[i] = down ? m[2] * in[partner] + m[3] * in[i] : m[0] * in[i] + m[1] * in[partner];
  }
}

void apply_single_site_inplace(const Matrix2& m, int site, std::span<Complex> psi) {
  const std::uint64_t bit = std::uint64_t{1} << site;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = psi[i];
    const Complex a1 = psi[i | bit];
    psi[i] = m[0] * a0 + m[1] * a1;
    psi[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
  Complex acc{};
  for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

double norm_squared(std::span<const Complex> psi) {
  double acc = 0.0;
  for (const Complex& a : psi) acc += std::norm(a);
  return acc;
}

Complex pauli_string_expectation(const PauliString& p, std::span<const Complex> psi) {
  Complex acc{};
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    acc += parity_sign(i & p.phase_mask) * std::conj(psi[i ^ p.flip_mask]) * psi[i];
  }
  return i_power(p.n_y) * acc;
}

void sparse_matvec(std::span<const double> diagonal, std::span<const FlipTerm> terms,
                   std::span<const Complex> in, std::span<Complex> out) {
  for (std::uint64_t i = 0; i < in.size(); ++i) {
    Complex acc = diagonal[i] * in[i];
    for (const FlipTerm& t : terms) {
      if (t.only_if_bits_differ && std::popcount(i & t.mask) != 1) continue;
      acc += t.coefficient * in[i ^ t.mask];
    }
    out[i] = acc;
  }
}

}  // namespace serial

// ---------------------------------------------------------------------------
namespace parallel {

void apply_single_site(const Matrix2& m, int site, std::span<const Complex> in,
                       std::span<Complex> out) {
  const std::uint64_t bit = std::uint64_t{1} << site;
  const Index half = static_cast<Index>(in.size() / 2);
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
  for (Index k = 0; k < half; ++k) {
    const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), site);
    const std::uint64_t i1 = i0 | bit;
    const Complex a0 = in[i0];
    const Complex a1 = in[i1];
    out[i0] = m[0] * a0 + m[1] * a1;
    out[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_single_site_inplace(const Matrix2& m, int site, std::span<Complex> psi) {
  const std::uint64_t bit = std::uint64_t{1} << site;
  const Index half = static_cast<Index>(psi.size() / 2);
#pragma omp parallel for schedule(static) if (psi.size() >= kParallelThreshold)
  for (Index k = 0; k < half; ++k) {
    const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), site);
    const std::uint64_t i1 = i0 | bit;
    const Complex a0 = psi[i0];
    const Complex a1 = psi[i1];
    psi[i0] = m[0] * a0 + m[1] * a1;
    psi[i1] = m[2] * a0 + m[3] * a1;
  }
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
  return blocked_sum<Complex>(bra.size(),
                              [&](std::size_t i) { return std::conj(bra[i]) * ket[i]; });
}

double norm_squared(std::span<const Complex> psi) {
  return blocked_sum<double>(psi.size(), [&](std::size_t i) { return std::norm(psi[i]); });
}

Complex pauli_string_expectation(const PauliString& p, std::span<const Complex> psi) {
  const Complex sum = blocked_sum<Complex>(psi.size(), [&](std::size_t i) {
    return parity_sign(i & p.phase_mask) * std::conj(psi[i ^ p.flip_mask]) * psi[i];
  });
  return i_power(p.n_y) * sum;
}

void sparse_matvec(std::span<const double> diagonal, std::span<const FlipTerm> terms,
                   std::span<const Complex> in, std::span<Complex> out) {
  const Index n = static_cast<Index>(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
  for (Index ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::uint64_t>(ii);
    Complex acc = diagonal[i] * in[i];
    for (const FlipTerm& t : terms) {
      if (t.only_if_bits_differ && std::popcount(i & t.mask) != 1) continue;
      acc += t.coefficient * in[i ^ t.mask];
    }
    out[i] = acc;
  }
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(Complex alpha, std::span<Complex> x) {
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace parallel

int configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("MACROSTAB_THREADS"); env != nullptr && *env != '\0') {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace macrostab::kernels
