#include "macrostab/rng.hpp"

#include <cmath>

namespace macrostab {
namespace {

constexpr std::uint32_t kMultiplier0 = 0xD2511F53;
constexpr std::uint32_t kMultiplier1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::bijection(Counter c, Key k) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kMultiplier0, c[0], hi0, lo0);
    mul_hi_lo(kMultiplier1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 20) | (lo >> 12);
  // 52 random bits, shifted half a step off both ends (exact in double).
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_lo_(static_cast<std::uint32_t>(stream)),
      stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

std::pair<double, double> NoiseStream::normal_pair(std::uint32_t step,
                                                   std::uint32_t block) const noexcept {
  const auto r = Philox4x32::bijection({block, step, stream_lo_, stream_hi_}, key_);
  const double u1 = to_open_unit(r[0], r[1]);
  const double u2 = to_open_unit(r[2], r[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double NoiseStream::normal(std::uint32_t step, std::uint32_t slot) const noexcept {
  const auto [a, b] = normal_pair(step, slot / 2);
  return (slot & 1) ? b : a;
}

double NoiseStream::uniform(std::uint32_t step, std::uint32_t slot) const noexcept {
  // Top bit of the block index separates uniforms from the Gaussian blocks.
  const auto r = Philox4x32::bijection({slot | 0x80000000u, step, stream_lo_, stream_hi_}, key_);
  return to_open_unit(r[0], r[1]);
}

}  // namespace macrostab
