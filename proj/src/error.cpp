#include "zeta2/error.hpp"
#include "zeta2/precision.hpp"

#include <cmath>
#include <string>

namespace zeta2 {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::Precision: return "PrecisionError";
    case ErrorKind::DenominatorZero: return "DenominatorZero";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::NonConvergence: return "NonConvergence";
  }
  return "Error";
}

void throw_error(ErrorKind kind, const std::string& what) {
  switch (kind) {
    case ErrorKind::Pole: throw PoleError(what);
    case ErrorKind::Domain: throw DomainError(what);
    case ErrorKind::ZeroArgument: throw ZeroArgument(what);
    case ErrorKind::Precision: throw PrecisionError(what);
    case ErrorKind::DenominatorZero: throw DenominatorZero(what);
    case ErrorKind::BoundaryZero: throw BoundaryZero(what);
    case ErrorKind::NonConvergence: throw NonConvergence(what);
  }
  throw Error(kind, what);
}

PrecisionContext::PrecisionContext(long mantissa_bits, long guard_bits)
    : mantissa_bits_(mantissa_bits), guard_bits_(guard_bits) {
  if (mantissa_bits < 64 || guard_bits < 16 || mantissa_bits <= 8 * guard_bits) {
    throw DomainError("precision context needs mantissa_bits >= 64, guard_bits >= 16 and "
                      "mantissa_bits > 8*guard_bits (got " + std::to_string(mantissa_bits) +
                      ", " + std::to_string(guard_bits) + ")");
  }
  newton_tol_ = std::ldexp(1.0, static_cast<int>(newton_tol_exp2()));
}

PrecisionContext PrecisionContext::with_bits(long mantissa_bits) const {
  const long bits = std::max(mantissa_bits, 8 * guard_bits_ + 1);
  return PrecisionContext(bits, guard_bits_);
}

}  // namespace zeta2
