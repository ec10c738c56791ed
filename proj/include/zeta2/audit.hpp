#pragma once

#include "zeta2/census.hpp"

#include <string>
#include <vector>

namespace zeta2 {

enum class Condition { C1, C2, C3, C4, C5, L23, L25, L26 };

const char* to_string(Condition c) noexcept;
/// Accepts the names printed by to_string; throws DomainError otherwise.
Condition parse_condition(const std::string& name);

struct AuditOptions {
  int threads = 1;
  double ratio_threshold = 10.0;  // growth audits pass while measured/shape stays below this
};

struct AuditReport {
  Condition condition = Condition::C1;
  Rect region{0.0, 0.0, 0.0, 0.0};
  Real grid_step;
  Complex worst_point;
  Real worst_margin;  // bound - measured; positive means the inequality held
  bool pass = false;
  long nodes = 0;
  std::string note;
};

/// Evaluates the condition on the closed grid over `region` with spacing `step`
/// (endpoints always included; a degenerate region is a single node).
/// The worst node is the one with the least margin, ties going to the smaller (sigma, t).
AuditReport audit(const PrecisionContext& ctx, Condition condition, const Rect& region, double step,
                  const AuditOptions& opt = {});

/// Margin of a condition at a single point, as used by audit().
Real audit_margin(const PrecisionContext& ctx, Condition condition, const Complex& s, const AuditOptions& opt = {});

struct ArgProfileRow {
  Real sigma;
  Real arg_g2;
  Real arg_zeta;
  Real bound_g2;    // (log T)^{2(1-sigma)} / (loglog T)^{1/2}
  Real bound_zeta;  // (log T)^{2(1-sigma)} / loglog T
};

/// Continuous arguments of G2 and zeta on sigma + iT next to their bound shapes.
/// Needs T >= 30 and each sigma in [1/2, 3/4] or >= 12 (a sanity column where G2 is near 1).
std::vector<ArgProfileRow> measure_arg_profile(const PrecisionContext& ctx, const Real& T,
                                               const std::vector<Real>& sigmas, const AuditOptions& opt = {});

/// The grid nodes along one axis: lo, lo + h, ..., and hi itself.
std::vector<Real> grid_axis(const Real& lo, const Real& hi, double step);

}  // namespace zeta2
