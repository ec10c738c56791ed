#pragma once

#include "zeta2/complex.hpp"
#include "zeta2/precision.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zeta2 {

using mp::Complex;
using mp::Real;

/// Functions the argument principle is applied to.
enum class Target { zeta, zeta2 };
/// Functions whose argument is continued along horizontal lines.
enum class ArgTarget { zeta, G2, G2_over_zeta };

const char* to_string(Target t) noexcept;
const char* to_string(ArgTarget t) noexcept;

/// Closed axis-parallel rectangle [sigma_min, sigma_max] x [t_min, t_max].
struct Rect {
  Real sigma_min, sigma_max, t_min, t_max;

  Rect(double smin, double smax, double tmin, double tmax, mpfr_prec_t bits = 53);
  Rect(Real smin, Real smax, Real tmin, Real tmax);

  /// Throws DomainError unless sigma_min < sigma_max and t_min < t_max.
  void validate() const;
  bool contains(const Complex& s) const;
  double diameter() const;
  std::string to_string() const;
};

struct Zero {
  Complex position;
  int multiplicity = 1;
  Real residual;  // |f(position)|
  Target target = Target::zeta;
};

struct ArgTrace {
  std::vector<std::pair<Real, Real>> samples;  // (sigma, arg), sigma decreasing
  Real total_variation;
  bool branch_consistent = true;

  const Real& final_arg() const { return samples.back().second; }
};

/// Tuning knobs; the defaults are what the CLI and acceptance suite use.
struct CensusOptions {
  int threads = 1;
  long sample_budget = 20'000'000;  // per winding/locate call
  double strip_height = 4.0;        // strip decomposition of large rectangles
  double max_segment = 1.0;         // longest unrefined boundary segment
  double newton_box = 1.0;          // winding-1 boxes below this diameter try Newton
};

/// (1/2pi) Delta arg f around the rectangle: zeros minus poles, with multiplicity.
/// Boundary zeros trigger up to 8 deterministic perturbations of the edges.
long winding_count(const PrecisionContext& ctx, Target target, const Rect& rect,
                   const CensusOptions& opt = {});

/// Zeros of the target inside rect, sorted by (Im, Re).
std::vector<Zero> locate_zeros(const PrecisionContext& ctx, Target target, const Rect& rect,
                               const CensusOptions& opt = {});

struct CountResult {
  long count = 0;
  Real T_used;             // T after any boundary perturbation
  int perturbations = 0;   // 0 when T was used as given
};

/// N(T) (k = 0) or N_2(T) (k = 2) by winding over [-1,2]x[2,T] or [-2,6]x[2,T].
CountResult count_Nk(const PrecisionContext& ctx, int k, const Real& T, const CensusOptions& opt = {});

/// sum over zeta'' zeros with 0 < gamma <= T of (beta - 1/2), with multiplicity.
Real sum_S2(const PrecisionContext& ctx, const Real& T, const CensusOptions& opt = {});
/// Same sum over an already located zero list.
Real sum_S2(const std::vector<Zero>& zeros, const Real& T, mpfr_prec_t bits);

/// Continuous argument of the target along sigma + iT, from max(40, sigma_stop + 10)
/// down to sigma_stop, starting from the principal value.
ArgTrace arg_continuous(const PrecisionContext& ctx, ArgTarget target, const Real& T, const Real& sigma_stop);

/// Result of a strip sweep over [sigma_min, sigma_max] x [t_lo, t_hi].
struct StripCensus {
  std::vector<Real> breaks;      // t-coordinates of strip boundaries after perturbation
  std::vector<long> winding;     // winding of each strip
  std::vector<Zero> zeros;       // all zeros found, sorted
  std::vector<int> perturbations;  // per break
};

/// Sweeps horizontal strips whose boundaries include every value of `must_break`.
/// Windings of consecutive strips add up to the winding of their union.
StripCensus strip_census(const PrecisionContext& ctx, Target target, const Real& sigma_min,
                         const Real& sigma_max, const Real& t_lo, const Real& t_hi,
                         const std::vector<Real>& must_break, const CensusOptions& opt = {});

/// Census rectangle used for N_2: sigma in [-2, 6].
inline constexpr double kZeta2SigmaMin = -2.0;
inline constexpr double kZeta2SigmaMax = 6.0;
inline constexpr double kCensusTMin = 2.0;

}  // namespace zeta2
