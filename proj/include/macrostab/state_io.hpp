#pragma once

#include <filesystem>
#include <iosfwd>

#include "macrostab/state.hpp"

namespace macrostab {

// Text state format:
//
//   macrostab-state v1 n_sites=<N>
//   <index> <re> <im>        (2^N lines, increasing index, %.17g)
//
// Writing then reading reproduces every amplitude bit-exactly.
inline constexpr const char* kStateFileMagic = "macrostab-state";
inline constexpr const char* kStateFileVersion = "v1";

void export_state(const StateVector& psi, std::ostream& out);
void export_state(const StateVector& psi, const std::filesystem::path& path);

// Reads a state. A vector whose norm^2 is within 1e-6 of one is kept
// bit-exact; any other non-zero vector is renormalized. Throws
// ErrorKind::kFormat on malformed input or a zero vector and ErrorKind::kSize
// when n_sites exceeds `max_sites`.
StateVector import_state(std::istream& in, int max_sites = kDefaultMaxSites);
StateVector import_state(const std::filesystem::path& path, int max_sites = kDefaultMaxSites);

// Parses only the header line and returns n_sites.
int read_state_header(const std::filesystem::path& path);

}  // namespace macrostab
