#include "macrostab/error.hpp"

namespace macrostab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kArgument: return "argument error";
    case ErrorKind::kState: return "state error";
    case ErrorKind::kInternal: return "internal consistency error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kNumerical: return "numerical error";
    case ErrorKind::kModel: return "model error";
    case ErrorKind::kCapability: return "capability error";
    case ErrorKind::kValidation: return "validation error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace macrostab
