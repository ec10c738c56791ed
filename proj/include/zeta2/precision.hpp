#pragma once

#include <mpfr.h>

namespace zeta2 {

/// Working precision and the tolerance policy derived from it.
///
/// Every value produced under a context carries `mantissa_bits` of mantissa.
/// Comparisons against zero and convergence tests use `newton_tol`, which
/// sacrifices four guard-bit blocks to rounding.
class PrecisionContext {
 public:
  static constexpr long kDefaultBits = 192;
  static constexpr long kDefaultGuard = 16;

  PrecisionContext() : PrecisionContext(kDefaultBits, kDefaultGuard) {}
  explicit PrecisionContext(long mantissa_bits, long guard_bits = kDefaultGuard);

  long mantissa_bits() const noexcept { return mantissa_bits_; }
  long guard_bits() const noexcept { return guard_bits_; }
  mpfr_prec_t bits() const noexcept { return static_cast<mpfr_prec_t>(mantissa_bits_); }

  /// 2^-(mantissa_bits - 4 guard_bits), as a double (it never underflows for sane contexts).
  double newton_tol() const noexcept { return newton_tol_; }
  /// log2 of newton_tol.
  long newton_tol_exp2() const noexcept { return -(mantissa_bits_ - 4 * guard_bits_); }
  /// Relative accuracy promised by the special-function kernels: 2^-(mantissa_bits - guard_bits).
  long kernel_tol_exp2() const noexcept { return -(mantissa_bits_ - guard_bits_); }

  /// Same guard policy at a different mantissa width (clamped to the invariants).
  PrecisionContext with_bits(long mantissa_bits) const;
  PrecisionContext doubled() const { return with_bits(2 * mantissa_bits_); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  long mantissa_bits_;
  long guard_bits_;
  double newton_tol_;
};

}  // namespace zeta2
