#pragma once

#include "zeta2/complex.hpp"
#include "zeta2/precision.hpp"

namespace zeta2 {

using mp::Complex;
using mp::Real;

/// F(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), so that zeta(s) = F(s) zeta(1-s).
/// Poles at s = 1, 3, 5, ...; the even positive integers are removable.
Complex F(const PrecisionContext& ctx, const Complex& s);

/// F'/F(s) = log 2pi + (pi/2) cot(pi s/2) - psi(1-s).
Complex F_logderiv(const PrecisionContext& ctx, const Complex& s);

/// (F'/F)'(s) = -(pi^2/4) csc^2(pi s/2) + psi'(1-s), in closed form.
Complex F_logderiv_prime(const PrecisionContext& ctx, const Complex& s);

/// F''/F = (F'/F)' + (F'/F)^2.
Complex F2_over_F(const PrecisionContext& ctx, const Complex& s);

/// F''/F' = (F''/F)/(F'/F). DenominatorZero where F'/F vanishes.
Complex F2_over_F1(const PrecisionContext& ctx, const Complex& s);

struct FuncEqTerm {
  Complex f;
  Complex flogd;
  Complex f2_over_f;
  Complex f2_over_f1;
};

/// All four quantities from one digamma/trigamma evaluation.
FuncEqTerm funceq_term(const PrecisionContext& ctx, const Complex& s);

/// G2(s) = 2^s zeta''(s) / (log 2)^2.
Complex G2(const PrecisionContext& ctx, const Complex& s);

struct Remainder {
  Complex value;
  /// |(1 - value) - (zeta''/zeta)(s) / (F''/F)(s)|
  Real identity_residual;
};

/// 2 (zeta'/zeta)(1-s) / (F''/F')(s) - (zeta''/zeta)(1-s) / (F''/F)(s).
Remainder remainder_term(const PrecisionContext& ctx, const Complex& s);

/// Same quantity without the identity diagnostic (one zeta evaluation instead of two).
Complex remainder_value(const PrecisionContext& ctx, const Complex& s);

}  // namespace zeta2
