#include "spherepack/error.hpp"

namespace spherepack {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NomeMismatch: return "NomeMismatch";
    case ErrorKind::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case ErrorKind::DomainTooLow: return "DomainTooLow";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::NonRealValue: return "NonRealValue";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::TailBoundViolated: return "TailBoundViolated";
    case ErrorKind::InsufficientTable: return "InsufficientTable";
    case ErrorKind::InsufficientGrid: return "InsufficientGrid";
    case ErrorKind::NonpositiveFhat0: return "NonpositiveFhat0";
    case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::UnsupportedLattice: return "UnsupportedLattice";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace spherepack
