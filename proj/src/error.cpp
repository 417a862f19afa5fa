#include "psk/error.hpp"

namespace psk {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotTransitiveTournament: return "NotTransitiveTournament";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::Unrooted: return "Unrooted";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NormalizationStuck: return "NormalizationStuck";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InvalidTrace: return "InvalidTrace";
    case ErrorKind::WidthExceeded: return "WidthExceeded";
    case ErrorKind::NotAClique: return "NotAClique";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::ProjectionsNotTransitive: return "ProjectionsNotTransitive";
    case ErrorKind::NotOuterplanar: return "NotOuterplanar";
    case ErrorKind::InvariantBroken: return "InvariantBroken";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::ParameterRange: return "ParameterRange";
    case ErrorKind::Explosion: return "Explosion";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BudgetTooLarge: return "BudgetTooLarge";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace psk
