#pragma once

#include <map>
#include <string>
#include <vector>

#include "macrostab/eigensolver.hpp"
#include "macrostab/lattice.hpp"
#include "macrostab/state.hpp"

namespace macrostab {

// A named state family, written as `family[:key=value[,key=value...]]`:
//
//   product-up                 all sites up
//   product-plus               all sites (|up> + |down>)/sqrt2
//   product:theta=T,phi=P      uniform Bloch angles
//   ghz
//   w                          Dicke with one down spin
//   dicke[:k=K]                K down spins, default N/2
//   tfim-ground[:h=H,J=J]      spin-flip symmetric ground state
//   pure-phase[:h=H,J=J,method=doublet|sb-field]
//   file:PATH                  state file; "{N}" in PATH expands to the size
class StateSource {
 public:
  // Throws ErrorKind::kValidation for unknown families, keys or values.
  static StateSource parse(const std::string& text);

  const std::string& text() const noexcept { return text_; }
  const std::string& family() const noexcept { return family_; }
  bool is_file() const noexcept { return family_ == "file"; }
  std::string file_for(int n_sites) const;

  // Checks everything that can be checked without building the state,
  // including state-file headers (ErrorKind::kValidation).
  void validate_for(const LatticeSpec& lattice) const;
  StateVector build(const LatticeSpec& lattice, const LanczosOptions& options = {}) const;

 private:
  double number(const std::string& key, double fallback) const;

  std::string text_;
  std::string family_;
  std::map<std::string, std::string> params_;
};

// Families used for the cluster / measurement-stability correspondence.
std::vector<std::string> standard_catalog();

}  // namespace macrostab
