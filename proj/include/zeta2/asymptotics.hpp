#pragma once

#include "zeta2/census.hpp"

#include <string>
#include <vector>

namespace zeta2 {

/// Li(x) = integral from 2 to x of dt / log t (so Li(2) = 0).
/// Composite Gauss-Legendre; panels are halved until two passes agree.
Real li_from2(const PrecisionContext& ctx, const Real& x);

/// Integral from a to b of dt / log t, 1 < a <= b.
Real log_integral(const PrecisionContext& ctx, const Real& a, const Real& b);

/// (T/2pi) log(T/4pi) - T/2pi, at the precision of T. Requires T > 0.
Real main_term_Nk(const Real& T);

/// kT/2pi loglog(T/2pi) + (1/2pi)(log2/2 - k loglog2) T - k Li(T/2pi).
/// DomainError unless k >= 1 and T >= 4pi (Li is only defined from 2 on).
Real distribution_rhs(const PrecisionContext& ctx, int k, const Real& T);

/// Main terms of the window sum over (T, T+U]:
/// (2U/2pi) loglog(T/2pi) + (1/2pi)(log2/2 - 2 loglog2) U. Requires 0 < U < T, T > 2pi.
Real window_rhs(const Real& T, const Real& U);

/// Error-term shapes that accompany window_rhs.
double window_shape_quadratic(double T, double U);  // U^2 / (T log T)
double window_shape_loglog(double T);               // (loglog T)^2

struct CensusRow {
  Real T;          // as requested
  Real T_used;     // after boundary perturbation
  long n2_count = 0;
  Real n2_main;
  Real n2_residual;
  Real s2_sum;
  Real s2_rhs;
  Real s2_residual;
  Real arg_zeta_half;
  Real arg_g2_half;
  Real closure;    // n2_count - n2_main - (arg_g2_half + arg_zeta_half) / 2pi
  int left_zeros = 0;  // zeros with negative real part up to T
  std::string flags;   // ';'-separated: perturbed, left_pair
};

/// One row per grid value. The grid must be strictly ascending with every T >= 4pi.
/// A single strip sweep with breaks at the grid values supplies all counts.
std::vector<CensusRow> build_census(const PrecisionContext& ctx, const std::vector<Real>& T_grid,
                                    const CensusOptions& opt = {});

}  // namespace zeta2
