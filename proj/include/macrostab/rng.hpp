#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace macrostab {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A draw is a pure function of (key, counter): there is no hidden state, so
// any stream can be reproduced from its coordinates regardless of the order in
// which work units run.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter bijection(Counter counter, Key key) noexcept;
};

// Gaussian stream addressed by (seed, stream, step). Every (stream, step)
// cell yields an independent block of standard normals indexed by `slot`.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  // Two independent standard normals for block `block` of `step`.
  std::pair<double, double> normal_pair(std::uint32_t step, std::uint32_t block) const noexcept;
  // Standard normal number `slot` of `step`.
  double normal(std::uint32_t step, std::uint32_t slot) const noexcept;
  // Uniform in (0, 1) for (step, slot).
  double uniform(std::uint32_t step, std::uint32_t slot) const noexcept;

 private:
  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
};

// 52-bit uniform in the open interval (0, 1) from two 32-bit words.
double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept;

}  // namespace macrostab
