#pragma once

#include <stdexcept>
#include <string>

namespace macrostab {

enum class ErrorKind {
  kSize,         // lattice cap exceeded or too few sites
  kArgument,     // bad argument (site index, epsilon range, ...)
  kState,        // state precondition (normalization)
  kInternal,     // internal consistency check failed
  kFormat,       // malformed state file
  kNumerical,    // eigensolver / integrator did not converge
  kModel,        // noise kernel not positive semidefinite
  kCapability,   // request exceeds a build capability (density-matrix cap)
  kValidation,   // scenario validation
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace macrostab
