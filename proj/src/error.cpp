#include "kcover/error.hpp"

namespace kcover {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::ModeMismatch: return "mode-mismatch";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotCompact: return "not-compact";
    case ErrorKind::RootBelowWindow: return "root-below-search-window";
    case ErrorKind::NotOneSided: return "not-one-sided";
    case ErrorKind::PreconditionFailed: return "precondition-failed";
    case ErrorKind::NoFeasiblePair: return "no-feasible-pair";
    case ErrorKind::EmptyGammaWindow: return "empty-gamma-window";
    case ErrorKind::ConstantNotContracting: return "constant-not-contracting";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace kcover
