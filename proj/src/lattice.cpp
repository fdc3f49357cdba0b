#include "macrostab/lattice.hpp"

#include <string>

#include "macrostab/error.hpp"
#include "macrostab/types.hpp"

namespace macrostab {

LatticeSpec LatticeSpec::chain(int n_sites, Geometry geometry, int max_sites) {
  if (max_sites > kHardMaxSites) {
    fail(ErrorKind::kSize, "site cap " + std::to_string(max_sites) + " exceeds hard limit " +
                               std::to_string(kHardMaxSites));
  }
  if (n_sites < 1 || n_sites > max_sites) {
    fail(ErrorKind::kSize, "n_sites=" + std::to_string(n_sites) + " outside [1, " +
                               std::to_string(max_sites) + "]");
  }
  return LatticeSpec{n_sites, geometry};
}

const char* to_string(Geometry geometry) noexcept {
  return geometry == Geometry::kOpenChain ? "open" : "periodic";
}

const char* to_string(Axis axis) noexcept {
  switch (axis) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kZ: return "z";
  }
  return "?";
}

}  // namespace macrostab
