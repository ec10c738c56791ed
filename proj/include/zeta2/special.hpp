#pragma once

#include "zeta2/complex.hpp"
#include "zeta2/precision.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace zeta2 {

using mp::Complex;
using mp::Real;

/// Throws DomainError if `z` has a NaN or infinite part.
const Complex& require_finite(const Complex& z, const char* where);
const Real& require_finite(const Real& x, const char* where);

/// Even-index Bernoulli numbers B_2, B_4, ..., B_{2 count} rounded to `bits`.
/// Tables are cached per precision and never mutated once published.
std::shared_ptr<const std::vector<Real>> bernoulli_table(mpfr_prec_t bits, std::size_t count);

/// Principal logarithm, Im in (-pi, pi]. ZeroArgument when |s| < newton_tol.
Complex log_principal(const PrecisionContext& ctx, const Complex& s);

/// Gamma function by upward recurrence into the Stirling region.
Complex gamma(const PrecisionContext& ctx, const Complex& s);
/// log Gamma on the branch that is continuous off (-inf, 0] and real on (0, inf).
Complex log_gamma(const PrecisionContext& ctx, const Complex& s);
/// psi(s) = Gamma'/Gamma(s).
Complex digamma(const PrecisionContext& ctx, const Complex& s);
/// psi'(s).
Complex trigamma(const PrecisionContext& ctx, const Complex& s);

/// True when s is within `tol` of one of 0, -1, -2, ...
bool near_nonpositive_integer(const Complex& s, double tol);

}  // namespace zeta2
