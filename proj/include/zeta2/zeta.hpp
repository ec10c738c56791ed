#pragma once

#include "zeta2/complex.hpp"
#include "zeta2/precision.hpp"

#include <cstdint>
#include <vector>

namespace zeta2 {

using mp::Complex;
using mp::Real;

/// Derivative order k of zeta^(k). Orders 0..2 are available everywhere off
/// s = 1; higher orders only where the Dirichlet series converges well.
class DerivOrder {
 public:
  static constexpr int kFullPlaneMax = 2;
  explicit DerivOrder(int k);
  int value() const noexcept { return k_; }
  bool full_plane() const noexcept { return k_ <= kFullPlaneMax; }

 private:
  int k_;
};

enum class RatioKind { zp_over_z, zpp_over_zp, zpp_over_z };

const char* to_string(RatioKind kind) noexcept;

/// zeta(s), zeta'(s), ..., zeta^(order)(s) from one Euler-Maclaurin pass.
struct ZetaJet {
  std::vector<Complex> d;  // d[j] = zeta^(j)(s)
  long cut = 0;            // Euler-Maclaurin truncation N actually used
};

/// Largest truncation point the evaluator will try before giving up.
inline constexpr long kMaxEulerMaclaurinCut = 1L << 20;

/// All derivatives up to `order` at s. Any order works off s = 1; the
/// zero finder uses order 3 for Newton on zeta''. PoleError at s = 1,
/// PrecisionError if no admissible truncation reaches the target accuracy.
ZetaJet zeta_jet(const PrecisionContext& ctx, const Complex& s, int order);

/// zeta^(k)(s). k > 2 requires Re s > 1.5.
Complex zeta_deriv(const PrecisionContext& ctx, DerivOrder order, const Complex& s);

/// Lambda(n): log p if n is a power of the prime p, else 0.
Real von_mangoldt(const PrecisionContext& ctx, std::uint64_t n);

/// zeta'/zeta, zeta''/zeta' or zeta''/zeta at s.
Complex log_deriv_ratio(const PrecisionContext& ctx, RatioKind kind, const Complex& s);

/// Same ratio from an already computed jet (order >= 2). Throws
/// DenominatorZero when the denominator vanishes to within newton_tol.
Complex ratio_from_jet(const PrecisionContext& ctx, RatioKind kind, const ZetaJet& jet);

}  // namespace zeta2
