#pragma once

#include <cstddef>
#include <cstdint>

namespace macrostab {

enum class Geometry { kOpenChain, kPeriodicChain };

// Default dense-storage cap. 2^14 amplitudes keeps every experiment on a desk.
inline constexpr int kDefaultMaxSites = 14;
// Absolute ceiling accepted for an overridden cap.
inline constexpr int kHardMaxSites = 26;

// A 1-D chain of spin-1/2 sites. The site count plays the role of the volume.
struct LatticeSpec {
  int n_sites = 0;
  Geometry geometry = Geometry::kOpenChain;

  // Validated construction; throws ErrorKind::kSize outside [1, max_sites].
  static LatticeSpec chain(int n_sites, Geometry geometry = Geometry::kOpenChain,
                           int max_sites = kDefaultMaxSites);

  std::size_t dim() const noexcept { return std::size_t{1} << n_sites; }
  std::uint64_t all_sites_mask() const noexcept { return (std::uint64_t{1} << n_sites) - 1; }
  // |x - y|, wrapped on a periodic chain.
  int distance(int x, int y) const noexcept {
    const int d = x > y ? x - y : y - x;
    return geometry == Geometry::kPeriodicChain && n_sites - d < d ? n_sites - d : d;
  }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

const char* to_string(Geometry geometry) noexcept;

}  // namespace macrostab
