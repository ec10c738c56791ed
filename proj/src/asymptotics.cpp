#include "zeta2/asymptotics.hpp"

#include "zeta2/error.hpp"
#include "zeta2/parallel.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace zeta2 {

namespace {

constexpr int kGaussPoints = 24;
constexpr long kMaxPanels = 1L << 16;

struct GaussRule {
  std::vector<Real> x, w;  // on [-1, 1]
};

GaussRule build_rule(mpfr_prec_t bits) {
  const int n = kGaussPoints;
  GaussRule r;
  const Real pi = mp::pi(bits);
  const Real tol = mp::exp2i(-static_cast<long>(bits) + 4, bits);
  for (int i = 1; i <= n / 2; ++i) {
    Real z = mp::cos(pi * ((i - 0.25) / (n + 0.5)));
    Real dp(bits);
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_n(z) and its derivative.
      Real p0(1L, bits), p1(z);
      for (int k = 2; k <= n; ++k) {
        Real p2 = (z * p1 * static_cast<long>(2 * k - 1) - p0 * static_cast<long>(k - 1)) / static_cast<long>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = (z * p1 - p0) * static_cast<long>(n) / (z * z - 1.0);
      const Real dz = p1 / dp;
      z -= dz;
      if (mp::abs(dz) < tol) break;
    }
    Real w = Real(2L, bits) / ((1.0 - z * z) * dp * dp);
    r.x.push_back(-z);
    r.w.push_back(w);
    r.x.push_back(z);
    r.w.push_back(std::move(w));
  }
  return r;
}

std::shared_ptr<const GaussRule> rule_for(mpfr_prec_t bits) {
  static std::mutex mu;
  static std::map<mpfr_prec_t, std::shared_ptr<const GaussRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[bits];
  if (!slot) slot = std::make_shared<const GaussRule>(build_rule(bits));
  return slot;
}

Real gauss_panels(const GaussRule& rule, const Real& a, const Real& b, long panels, mpfr_prec_t bits) {
  const Real h = (b - a) / panels;
  Real half = h;
  half.ldexp(-1);
  Real sum(bits);
  for (long p = 0; p < panels; ++p) {
    const Real mid = a + h * p + half;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      sum += rule.w[i] / mp::log(mid + half * rule.x[i]);
    }
  }
  return sum * half;
}

Real two_pi(mpfr_prec_t bits) { return mp::pi(bits) * 2L; }

Real loglog(const Real& x) { return mp::log(mp::log(x)); }

}  // namespace

Real log_integral(const PrecisionContext& ctx, const Real& a_in, const Real& b_in) {
  if (!(a_in > 1.0)) throw DomainError("log_integral needs a lower limit above 1");
  if (b_in < a_in) throw DomainError("log_integral needs a <= b");
  const mpfr_prec_t bits = ctx.bits() + 32;
  const Real a(a_in, bits), b(b_in, bits);
  if (a == b) return Real(ctx.bits());
  const auto rule = rule_for(bits);
  const Real tol = mp::exp2i(ctx.kernel_tol_exp2(), bits);
  long panels = std::max(1L, static_cast<long>(std::ceil((b - a).to_double())));
  Real prev = gauss_panels(*rule, a, b, panels, bits);
  while (panels < kMaxPanels) {
    panels *= 2;
    Real next = gauss_panels(*rule, a, b, panels, bits);
    if (mp::abs(next - prev) <= tol * mp::abs(next)) {
      next.round_to(ctx.bits());
      return next;
    }
    prev = std::move(next);
  }
  throw NonConvergence("log_integral: panel refinement did not settle");
}

Real li_from2(const PrecisionContext& ctx, const Real& x) {
  if (!(x >= 2.0)) throw DomainError("Li(x) is defined for x >= 2");
  return log_integral(ctx, Real(2L, ctx.bits()), x);
}

Real main_term_Nk(const Real& T) {
  if (!(T > 0.0)) throw DomainError("main_term_Nk needs T > 0");
  const Real tp = T / two_pi(T.bits());
  Real half_tp(tp);
  half_tp.ldexp(-1);
  return tp * mp::log(half_tp) - tp;
}

Real distribution_rhs(const PrecisionContext& ctx, int k, const Real& T_in) {
  if (k < 1) throw DomainError("distribution_rhs needs k >= 1");
  const mpfr_prec_t bits = ctx.bits();
  const Real T(T_in, bits);
  const Real tp = T / two_pi(bits);
  if (!(tp > 1.0)) throw DomainError("distribution_rhs needs T > 2pi");
  if (!(tp >= 2.0)) throw DomainError("distribution_rhs needs T >= 4pi so that Li(T/2pi) is defined");
  const Real l2 = mp::ln2(bits);
  const Real lin = (l2 / 2L - loglog(Real(2L, bits)) * static_cast<long>(k)) * tp;
  return tp * loglog(tp) * static_cast<long>(k) + lin - li_from2(ctx, tp) * static_cast<long>(k);
}

Real window_rhs(const Real& T, const Real& U) {
  const mpfr_prec_t bits = std::max(T.bits(), U.bits());
  if (!(U > 0.0) || !(U < T)) throw DomainError("window_rhs needs 0 < U < T");
  const Real tp = Real(T, bits) / two_pi(bits);
  if (!(tp > 1.0)) throw DomainError("window_rhs needs T > 2pi");
  const Real up = Real(U, bits) / two_pi(bits);
  const Real l2 = mp::ln2(bits);
  return up * loglog(tp) * 2L + (l2 / 2L - loglog(Real(2L, bits)) * 2L) * up;
}

double window_shape_quadratic(double T, double U) { return U * U / (T * std::log(T)); }

double window_shape_loglog(double T) {
  const double l = std::log(std::log(T));
  return l * l;
}

std::vector<CensusRow> build_census(const PrecisionContext& ctx, const std::vector<Real>& T_grid,
                                    const CensusOptions& opt) {
  if (T_grid.empty()) return {};
  const double four_pi = 4 * M_PI;
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] >= four_pi)) throw DomainError("census heights must be at least 4pi");
    if (i > 0 && !(T_grid[i] > T_grid[i - 1])) throw DomainError("census grid must be strictly ascending");
  }
  const mpfr_prec_t bits = ctx.bits();
  const StripCensus sc = strip_census(ctx, Target::zeta2, Real(kZeta2SigmaMin, bits), Real(kZeta2SigmaMax, bits),
                                      Real(kCensusTMin, bits), T_grid.back(), T_grid, opt);

  std::vector<CensusRow> rows(T_grid.size());
  std::vector<std::size_t> index(T_grid.size());
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    // Perturbations are far smaller than the strip height, so the nearest break is the right one.
    std::size_t best = 0;
    double gap = 1e300;
    for (std::size_t j = 0; j < sc.breaks.size(); ++j) {
      const double g = std::fabs((sc.breaks[j] - T_grid[i]).to_double());
      if (g < gap) {
        gap = g;
        best = j;
      }
    }
    index[i] = best;
  }
  const Real half(0.5, bits);
  const Real tp = two_pi(bits);
  parallel_for(T_grid.size(), opt.threads, [&](std::size_t i) {
    CensusRow& row = rows[i];
    const std::size_t j = index[i];
    row.T = Real(T_grid[i], bits);
    row.T_used = Real(sc.breaks[j], bits);
    for (std::size_t s = 0; s < j; ++s) row.n2_count += sc.winding[s];
    row.n2_main = main_term_Nk(row.T_used);
    row.n2_residual = Real(row.n2_count, bits) - row.n2_main;
    row.s2_sum = sum_S2(sc.zeros, row.T_used, bits);
    row.s2_rhs = distribution_rhs(ctx, 2, row.T_used);
    row.s2_residual = row.s2_sum - row.s2_rhs;
    row.arg_zeta_half = arg_continuous(ctx, ArgTarget::zeta, row.T_used, half).final_arg();
    row.arg_g2_half = arg_continuous(ctx, ArgTarget::G2, row.T_used, half).final_arg();
    row.closure = row.n2_residual - (row.arg_g2_half + row.arg_zeta_half) / tp;
    for (const auto& z : sc.zeros) {
      if (z.position.im <= row.T_used && z.position.re.sign() < 0) row.left_zeros += z.multiplicity;
    }
    if (sc.perturbations[j] > 0) row.flags = "perturbed";
    if (row.left_zeros > 0) row.flags += row.flags.empty() ? "left_pair" : ";left_pair";
  });
  return rows;
}

}  // namespace zeta2
