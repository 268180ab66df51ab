#pragma once

#include <stdexcept>
#include <string>

namespace kcover {

enum class ErrorKind {
  SizeLimit,
  DimensionMismatch,
  ModeMismatch,
  InvalidArgument,
  NotCompact,
  RootBelowWindow,
  NotOneSided,
  PreconditionFailed,
  NoFeasiblePair,
  EmptyGammaWindow,
  ConstantNotContracting,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every library failure is reported through this type; `kind()` lets the
/// CLI map failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kcover
