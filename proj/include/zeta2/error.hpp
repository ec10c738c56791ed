#pragma once

#include <stdexcept>
#include <string>

namespace zeta2 {

enum class ErrorKind {
  Pole,
  Domain,
  ZeroArgument,
  Precision,
  DenominatorZero,
  BoundaryZero,
  NonConvergence,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind decides the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by the input lying on a singular or excluded set.
  bool is_domain() const noexcept {
    return kind_ != ErrorKind::Precision && kind_ != ErrorKind::NonConvergence;
  }

 private:
  ErrorKind kind_;
};

#define ZETA2_DEFINE_ERROR(Name, Kind)                                     \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

ZETA2_DEFINE_ERROR(PoleError, Pole)
ZETA2_DEFINE_ERROR(DomainError, Domain)
ZETA2_DEFINE_ERROR(ZeroArgument, ZeroArgument)
ZETA2_DEFINE_ERROR(PrecisionError, Precision)
ZETA2_DEFINE_ERROR(DenominatorZero, DenominatorZero)
ZETA2_DEFINE_ERROR(BoundaryZero, BoundaryZero)
ZETA2_DEFINE_ERROR(NonConvergence, NonConvergence)

#undef ZETA2_DEFINE_ERROR

/// Throws the error class matching `kind`.
[[noreturn]] void throw_error(ErrorKind kind, const std::string& what);

}  // namespace zeta2
