#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace macrostab {

using Complex = std::complex<double>;

// Row-major 2x2 complex matrix acting on one site in the (up, down) basis.
using Matrix2 = std::array<Complex, 4>;

enum class Axis { kX = 0, kY = 1, kZ = 2 };

inline constexpr std::array<Axis, 3> kAllAxes = {Axis::kX, Axis::kY, Axis::kZ};

inline constexpr int axis_index(Axis axis) noexcept { return static_cast<int>(axis); }

const char* to_string(Axis axis) noexcept;

// Tolerances shared across modules.
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-12;

}  // namespace macrostab
