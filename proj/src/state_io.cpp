#include "macrostab/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "macrostab/error.hpp"

namespace macrostab {
namespace {

int parse_header(const std::string& line) {
  std::istringstream ss(line);
  std::string magic, version, sites;
  if (!(ss >> magic >> version >> sites) || magic != kStateFileMagic) {
    fail(ErrorKind::kFormat, "missing '" + std::string(kStateFileMagic) + "' header");
  }
  if (version != kStateFileVersion) fail(ErrorKind::kFormat, "unsupported version " + version);
  const std::string key = "n_sites=";
  if (sites.rfind(key, 0) != 0) fail(ErrorKind::kFormat, "header lacks n_sites=<N>");
  std::string rest;
  if (ss >> rest) fail(ErrorKind::kFormat, "trailing tokens in header");
  try {
    std::size_t used = 0;
    const int n = std::stoi(sites.substr(key.size()), &used);
    if (used != sites.size() - key.size()) throw std::invalid_argument("trailing");
    return n;
  } catch (const std::exception&) {
    fail(ErrorKind::kFormat, "bad n_sites value '" + sites + "'");
  }
}

double parse_double(const std::string& token, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || !std::isfinite(v)) {
    fail(ErrorKind::kFormat, "line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
  return v;
}

}  // namespace

void export_state(const StateVector& psi, std::ostream& out) {
  out << kStateFileMagic << ' ' << kStateFileVersion << " n_sites=" << psi.n_sites() << '\n';
  char buf[96];
  const auto amps = psi.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", i, amps[i].real(), amps[i].imag());
    out << buf;
  }
}

void export_state(const StateVector& psi, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kFormat, "cannot open " + path.string() + " for writing");
  export_state(psi, out);
  if (!out) fail(ErrorKind::kFormat, "write failed for " + path.string());
}

StateVector import_state(std::istream& in, int max_sites) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kFormat, "empty state file");
  const int n = parse_header(line);
  const LatticeSpec lattice = LatticeSpec::chain(n, Geometry::kOpenChain, max_sites);

  std::vector<Complex> amps;
  amps.reserve(lattice.dim());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string idx, re, im, extra;
    if (!(ss >> idx >> re >> im) || (ss >> extra)) {
      fail(ErrorKind::kFormat, "line " + std::to_string(line_no) + ": expected '<index> <re> <im>'");
    }
    if (amps.size() >= lattice.dim()) {
      fail(ErrorKind::kFormat, "more than 2^" + std::to_string(n) + " amplitudes");
    }
    if (idx != std::to_string(amps.size())) {
      fail(ErrorKind::kFormat, "line " + std::to_string(line_no) + ": expected index " +
                                   std::to_string(amps.size()) + ", got '" + idx + "'");
    }
    amps.emplace_back(parse_double(re, line_no), parse_double(im, line_no));
  }
  if (amps.size() != lattice.dim()) {
    fail(ErrorKind::kFormat, "expected " + std::to_string(lattice.dim()) + " amplitudes, got " +
                                 std::to_string(amps.size()));
  }
  StateVector raw(lattice, std::move(amps));
  const double norm2 = raw.norm_squared();
  if (std::abs(norm2 - 1.0) <= 1e-6) return raw;
  if (!(norm2 > 0.0)) fail(ErrorKind::kFormat, "state file holds a zero vector");
  return StateVector::normalized(lattice, raw.to_vector());
}

StateVector import_state(const std::filesystem::path& path, int max_sites) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kFormat, "cannot open " + path.string());
  return import_state(in, max_sites);
}

int read_state_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kFormat, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kFormat, "empty state file");
  return parse_header(line);
}

}  // namespace macrostab
