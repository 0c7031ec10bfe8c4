#include "barnes_zeta/errors.hpp"

namespace barnes {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::DegenerateRatio: return "DegenerateRatio";
    case ErrorKind::ShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorKind::GuardSaturated: return "GuardSaturated";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::TooCloseToPole: return "TooCloseToPole";
    case ErrorKind::NotEnoughMethods: return "NotEnoughMethods";
    case ErrorKind::InsufficientSpan: return "InsufficientSpan";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

PoleError::PoleError(int pole)
    : Error(ErrorKind::PoleAt, "pole at s = " + std::to_string(pole)), pole_(pole) {}

}  // namespace barnes
