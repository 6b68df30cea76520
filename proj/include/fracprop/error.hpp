#pragma once

#include <stdexcept>
#include <string>

namespace fracprop {

enum class ErrorKind {
  InvalidInput,
  GridMismatch,
  Configuration,
  Domain,
  Range,
  UnwrapResolution,
  InconsistentBranch,
  SemistabilityViolation,
  InsufficientData,
  DegenerateSymbol,
  InconsistentPair,
  ModelMismatch,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a category so callers (the CLI
/// in particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fracprop
