#pragma once

#include <stdexcept>
#include <string>

namespace psk {

enum class ErrorKind {
  MalformedInput,
  InvalidArgument,
  NotTransitiveTournament,
  TooSmall,
  Unrooted,
  NotSimple,
  NormalizationStuck,
  PreconditionViolated,
  InvalidTrace,
  WidthExceeded,
  NotAClique,
  NotDiagonal,
  ProjectionsNotTransitive,
  NotOuterplanar,
  InvariantBroken,
  ArityMismatch,
  NotAPartition,
  ParameterRange,
  Explosion,
  TooLarge,
  BudgetTooLarge,
  VerificationFailed,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (notably the
/// CLI) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace psk
