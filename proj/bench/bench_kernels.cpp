// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "macrostab/hamiltonian.hpp"
#include "macrostab/kernels.hpp"
#include "macrostab/lattice.hpp"

namespace {

using macrostab::Complex;
namespace kernels = macrostab::kernels;

std::vector<Complex> random_state(int n_sites) {
  std::mt19937_64 gen(static_cast<unsigned>(n_sites));
  std::normal_distribution<double> d;
  std::vector<Complex> v(std::size_t{1} << n_sites);
  for (auto& c : v) c = {d(gen), d(gen)};
  return v;
}

const macrostab::Matrix2 kGate{Complex(0.6, 0.0), Complex(0.0, -0.8), Complex(0.0, -0.8),
                               Complex(0.6, 0.0)};

template <bool Parallel>
void BM_ApplySingleSite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto in = random_state(n);
  std::vector<Complex> out(in.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::apply_single_site(kGate, n / 2, in, out);
    } else {
      kernels::serial::apply_single_site(kGate, n / 2, in, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(in.size()) * 32);
}

template <bool Parallel>
void BM_InnerProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_state(n);
  const auto b = random_state(n + 1);
  const std::span<const Complex> bs(b.data(), a.size());
  for (auto _ : state) {
    Complex z = Parallel ? kernels::parallel::inner_product(a, bs)
                         : kernels::serial::inner_product(a, bs);
    benchmark::DoNotOptimize(z);
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(a.size()) * 32);
}

template <bool Parallel>
void BM_PauliPairExpectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto psi = random_state(n);
  const auto p = kernels::PauliString::pair(0, macrostab::Axis::kY, n - 1, macrostab::Axis::kX);
  for (auto _ : state) {
    Complex z = Parallel ? kernels::parallel::pauli_string_expectation(p, psi)
                         : kernels::serial::pauli_string_expectation(p, psi);
    benchmark::DoNotOptimize(z);
  }
}

template <bool Parallel>
void BM_HamiltonianApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const macrostab::Hamiltonian h({macrostab::Model::kXXZ,
                                  macrostab::LatticeSpec::chain(n, macrostab::Geometry::kOpenChain,
                                                                macrostab::kHardMaxSites),
                                  1.0, 0.3, 0.5, 0.1});
  const auto in = random_state(n);
  std::vector<Complex> out(in.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      h.apply(in, out);
    } else {
      h.apply_serial(in, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_ApplySingleSite<false>)->Name("apply_single_site/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_ApplySingleSite<true>)->Name("apply_single_site/parallel")->DenseRange(12, 20, 4);
BENCHMARK(BM_InnerProduct<false>)->Name("inner_product/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_InnerProduct<true>)->Name("inner_product/parallel")->DenseRange(12, 20, 4);
BENCHMARK(BM_PauliPairExpectation<false>)->Name("pauli_pair/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_PauliPairExpectation<true>)->Name("pauli_pair/parallel")->DenseRange(12, 20, 4);
BENCHMARK(BM_HamiltonianApply<false>)->Name("hamiltonian_apply/serial")->DenseRange(12, 18, 3);
BENCHMARK(BM_HamiltonianApply<true>)->Name("hamiltonian_apply/parallel")->DenseRange(12, 18, 3);

BENCHMARK_MAIN();
