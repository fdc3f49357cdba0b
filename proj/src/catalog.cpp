#include "macrostab/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "macrostab/dynamics.hpp"
#include "macrostab/error.hpp"
#include "macrostab/hamiltonian.hpp"
#include "macrostab/state_io.hpp"

namespace macrostab {
namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"product-up", {}},
      {"product-plus", {}},
      {"product", {"theta", "phi"}},
      {"ghz", {}},
      {"w", {}},
      {"dicke", {"k"}},
      {"tfim-ground", {"h", "J"}},
      {"pure-phase", {"h", "J", "method"}},
  };
  return keys;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) {
    fail(ErrorKind::kValidation, "state parameter " + key + "='" + value + "' is not a number");
  }
  return out;
}

}  // namespace

StateSource StateSource::parse(const std::string& text) {
  StateSource s;
  s.text_ = text;
  const auto colon = text.find(':');
  s.family_ = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (s.family_ == "file") {
    if (rest.empty()) fail(ErrorKind::kValidation, "file state source needs a path");
    s.params_["path"] = rest;
    return s;
  }
  const auto family = allowed_keys().find(s.family_);
  if (family == allowed_keys().end()) {
    fail(ErrorKind::kValidation, "unknown state family '" + s.family_ + "'");
  }
  std::size_t pos = 0;
  while (pos < rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(ErrorKind::kValidation, "state parameter '" + item + "' is not key=value");
    }
    const std::string key = item.substr(0, eq);
    if (!family->second.contains(key)) {
      fail(ErrorKind::kValidation, "state family '" + s.family_ + "' has no parameter '" + key + "'");
    }
    if (!s.params_.emplace(key, item.substr(eq + 1)).second) {
      fail(ErrorKind::kValidation, "duplicate state parameter '" + key + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (const auto& [key, value] : s.params_) {
    if (key == "method") {
      try {
        parse_pure_phase_method(value);
      } catch (const Error& e) {
        fail(ErrorKind::kValidation, e.what());
      }
    } else if (key == "k") {
      const double k = parse_double(key, value);
      if (k < 0 || k != std::floor(k)) fail(ErrorKind::kValidation, "dicke k must be a whole number");
    } else {
      parse_double(key, value);
    }
  }
  return s;
}

double StateSource::number(const std::string& key, double fallback) const {
  const auto it = params_.find(key);
  return it == params_.end() ? fallback : parse_double(key, it->second);
}

std::string StateSource::file_for(int n_sites) const {
  std::string path = params_.at("path");
  for (auto pos = path.find("{N}"); pos != std::string::npos; pos = path.find("{N}")) {
    path.replace(pos, 3, std::to_string(n_sites));
  }
  return path;
}

void StateSource::validate_for(const LatticeSpec& lattice) const {
  const int n = lattice.n_sites;
  if (is_file()) {
    const std::string path = file_for(n);
    int header = 0;
    try {
      header = read_state_header(path);
    } catch (const Error& e) {
      fail(ErrorKind::kValidation, "state file " + path + ": " + e.what());
    }
    if (header != n) {
      fail(ErrorKind::kValidation, "state file " + path + " has n_sites=" + std::to_string(header) +
                                       " but the scenario asks for N=" + std::to_string(n));
    }
    return;
  }
  if (family_ == "ghz" && n < 2) fail(ErrorKind::kValidation, "ghz needs N >= 2");
  if (family_ == "dicke" && number("k", n / 2) > n) {
    fail(ErrorKind::kValidation, "dicke k exceeds N=" + std::to_string(n));
  }
}

StateVector StateSource::build(const LatticeSpec& lattice, const LanczosOptions& options) const {
  validate_for(lattice);
  const int n = lattice.n_sites;
  if (family_ == "file") return import_state(file_for(n), kHardMaxSites);
  if (family_ == "product-up") return make_product_state(lattice, BlochAngles{0.0, 0.0});
  if (family_ == "product-plus") {
    return make_product_state(lattice, BlochAngles{std::numbers::pi / 2.0, 0.0});
  }
  if (family_ == "product") {
    return make_product_state(lattice, BlochAngles{number("theta", 0.0), number("phi", 0.0)});
  }
  if (family_ == "ghz") return make_ghz(lattice);
  if (family_ == "w") return make_dicke(lattice, 1);
  if (family_ == "dicke") return make_dicke(lattice, static_cast<int>(number("k", n / 2)));
  HamiltonianSpec spec{Model::kTransverseIsing, lattice, number("J", 1.0), number("h", 0.1), 1.0,
                       0.0};
  if (family_ == "tfim-ground") {
    const Hamiltonian h(spec);
    return ground_state(h, Which::kLowest, options).front().state;
  }
  const auto method = params_.contains("method") ? parse_pure_phase_method(params_.at("method"))
                                                 : PurePhaseMethod::kDoubletSuperposition;
  return pure_phase_vacuum(spec, method, options).state;
}

std::vector<std::string> standard_catalog() {
  return {"product-up",      "product-plus",     "ghz",           "w", "dicke",
          "tfim-ground:h=0.1", "tfim-ground:h=2", "pure-phase:h=0.1"};
}

}  // namespace macrostab
