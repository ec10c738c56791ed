#include "zeta2/audit.hpp"

#include "zeta2/error.hpp"
#include "zeta2/funceq.hpp"
#include "zeta2/parallel.hpp"
#include "zeta2/zeta.hpp"

#include <cmath>

namespace zeta2 {

namespace {

constexpr const char* kNames[] = {"C1", "C2", "C3", "C4", "C5", "L23", "L25", "L26"};

Real loglog(const Real& x) { return mp::log(mp::log(x)); }

// (log T)^{2(1 - sigma)}
Real log_power(const Real& T, const Real& sigma) { return mp::pow(mp::log(T), (1.0 - sigma) * 2L); }

// Lemma-shaped desk constant: any eps0 below 3/(8 log T) will do; take 1/(4 log T).
Real eps0_for(const Real& T) { return Real(1L, T.bits()) / (mp::log(T) * 4L); }

void require(bool ok, Condition c, const std::string& what) {
  if (!ok) throw DomainError(std::string(to_string(c)) + ": " + what);
}

void check_region(Condition c, const Rect& r) {
  require(r.sigma_min <= r.sigma_max && r.t_min <= r.t_max, c, "region has min > max");
  switch (c) {
    case Condition::C1: require(r.sigma_min >= 12.0, c, "needs sigma >= 12"); break;
    case Condition::C2: require(r.sigma_max <= -10.0 && r.t_min >= 2.0, c, "needs sigma <= -10 and t >= 2"); break;
    case Condition::C3:
    case Condition::C4: require(r.sigma_max <= 0.5 && r.t_min >= 29.0, c, "needs sigma <= 1/2 and t >= 29"); break;
    case Condition::C5: require(r.t_min == r.t_max && r.t_min >= 2.0, c, "needs a single horizontal line t = t0 >= 2"); break;
    case Condition::L23:
    case Condition::L25:
    case Condition::L26: require(r.t_min >= 30.0, c, "needs T >= 30"); break;
  }
  if (c == Condition::L25) require(r.sigma_min >= 0.5 && r.sigma_max <= 0.75, c, "needs sigma in [1/2, 3/4]");
}

const char* note_for(Condition c) {
  switch (c) {
    case Condition::C1: return "margin = (1/2)(2/3)^(sigma/2) - |G2 - 1|";
    case Condition::C2: return "intermediate bound 32*2^sigma/log(1-sigma) audited; the final 2^sigma bound needs log(1-sigma) >= 32";
    case Condition::C3: return "margin = min(|F''/F| - 1, pi/6 - |arg F''/F|), principal branch";
    case Condition::C4: return "margin = min(-Re zeta'/zeta, -Re zeta''/zeta', |zeta''/zeta|)";
    case Condition::C5: return "no zero found at resolution h; margin = min(|zeta|, |zeta''|) - 2^(-bits/2) over the nodes";
    case Condition::L23: return "margin = threshold - |arg G2/zeta| / (log(log T/eps0)/(sigma-1/2-eps0)), eps0 = 1/(4 log T)";
    case Condition::L25: return "margin = threshold - |arg G2| / ((log T)^(2(1-sigma))/(loglog T)^(1/2))";
    case Condition::L26: return "margin = threshold - log|zeta''| / ((log T)^(2(1-sigma))/loglog T + (log T)^(1/10))";
  }
  return "";
}

}  // namespace

const char* to_string(Condition c) noexcept { return kNames[static_cast<int>(c)]; }

Condition parse_condition(const std::string& name) {
  for (int i = 0; i < 8; ++i) {
    if (name == kNames[i]) return static_cast<Condition>(i);
  }
  throw DomainError("unknown condition '" + name + "'");
}

std::vector<Real> grid_axis(const Real& lo, const Real& hi, double step) {
  if (!(step > 0) || !std::isfinite(step)) throw DomainError("grid step must be positive");
  if (hi < lo) throw DomainError("grid axis has lo > hi");
  std::vector<Real> out;
  const double span = (hi - lo).to_double();
  const long n = static_cast<long>(std::floor(span / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + Real(step, lo.bits()) * i);
  if (out.back() < hi) {
    if ((hi - out.back()).to_double() < 1e-9 * step) out.back() = hi;
    else out.push_back(hi);
  }
  return out;
}

Real audit_margin(const PrecisionContext& ctx, Condition c, const Complex& s, const AuditOptions& opt) {
  const mpfr_prec_t bits = ctx.bits();
  const Real& sigma = s.re;
  const Real& t = s.im;
  switch (c) {
    case Condition::C1: {
      const Real bound = mp::pow(Real(2L, bits) / Real(3L, bits), sigma / 2L) / 2L;
      return bound - mp::abs(G2(ctx, s) - 1.0);
    }
    case Condition::C2: {
      const Real bound = mp::pow(Real(2L, bits), sigma) * 32L / mp::log(1.0 - sigma);
      return bound - mp::abs(remainder_value(ctx, s));
    }
    case Condition::C3: {
      const Complex r = F2_over_F(ctx, s);
      const Real pi6 = mp::pi(bits) / 6L;
      return mp::min(mp::abs(r) - 1.0, pi6 - mp::abs(mp::arg(r)));
    }
    case Condition::C4: {
      const ZetaJet jet = zeta_jet(ctx, s, 2);
      const Real a = -ratio_from_jet(ctx, RatioKind::zp_over_z, jet).re;
      const Real b = -ratio_from_jet(ctx, RatioKind::zpp_over_zp, jet).re;
      const Real m = mp::abs(ratio_from_jet(ctx, RatioKind::zpp_over_z, jet));
      return mp::min(mp::min(a, b), m);
    }
    case Condition::C5: {
      const ZetaJet jet = zeta_jet(ctx, s, 2);
      return mp::min(mp::abs(jet.d[0]), mp::abs(jet.d[2])) - mp::exp2i(-ctx.mantissa_bits() / 2, bits);
    }
    case Condition::L23: {
      const Real e0 = eps0_for(t);
      const Real gap = sigma - 0.5 - e0;
      if (!(gap > 0.0)) throw DomainError("L23: needs sigma > 1/2 + eps0");
      const Real bound = mp::log(mp::log(t) / e0) / gap;
      const Real measured = mp::abs(arg_continuous(ctx, ArgTarget::G2_over_zeta, t, sigma).final_arg());
      return Real(opt.ratio_threshold, bits) - measured / bound;
    }
    case Condition::L25: {
      const Real bound = log_power(t, sigma) / mp::sqrt(loglog(t));
      const Real measured = mp::abs(arg_continuous(ctx, ArgTarget::G2, t, sigma).final_arg());
      return Real(opt.ratio_threshold, bits) - measured / bound;
    }
    case Condition::L26: {
      if (sigma < 0.5 - 1.0 / loglog(t)) throw DomainError("L26: needs sigma >= 1/2 - 1/loglog T");
      const Real shape = log_power(t, sigma) / loglog(t) + mp::pow(mp::log(t), Real(0.1, bits));
      const Real measured = mp::log(mp::abs(zeta_deriv(ctx, DerivOrder(2), s)));
      return Real(opt.ratio_threshold, bits) - measured / shape;
    }
  }
  throw DomainError("unknown condition");
}

AuditReport audit(const PrecisionContext& ctx, Condition c, const Rect& region, double step, const AuditOptions& opt) {
  check_region(c, region);
  const mpfr_prec_t bits = ctx.bits();
  const std::vector<Real> sig = grid_axis(Real(region.sigma_min, bits), Real(region.sigma_max, bits), step);
  const std::vector<Real> ts = grid_axis(Real(region.t_min, bits), Real(region.t_max, bits), step);
  const std::size_t n = sig.size() * ts.size();
  // Node k is (sig[k / nt], ts[k % nt]): lexicographic in (sigma, t).
  std::vector<Real> margin(n, Real(bits));
  parallel_for(n, opt.threads, [&](std::size_t k) {
    const Complex s(sig[k / ts.size()], ts[k % ts.size()]);
    try {
      margin[k] = audit_margin(ctx, c, s, opt);
    } catch (const Error& e) {
      throw_error(e.kind(), std::string(e.what()) + " [at node " + mp::to_string(s, 17) + "]");
    }
  });
  std::size_t worst = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (margin[k] < margin[worst]) worst = k;
  }
  AuditReport r;
  r.condition = c;
  r.region = region;
  r.grid_step = Real(step, bits);
  r.worst_point = Complex(sig[worst / ts.size()], ts[worst % ts.size()]);
  r.worst_margin = margin[worst];
  r.pass = r.worst_margin > 0.0;
  r.nodes = static_cast<long>(n);
  r.note = note_for(c);
  return r;
}

std::vector<ArgProfileRow> measure_arg_profile(const PrecisionContext& ctx, const Real& T_in,
                                               const std::vector<Real>& sigmas, const AuditOptions& opt) {
  const mpfr_prec_t bits = ctx.bits();
  const Real T(T_in, bits);
  if (!(T >= 30.0)) throw DomainError("measure_arg_profile needs T >= 30");
  for (const auto& s : sigmas) {
    const bool strip = s >= 0.5 && s <= 0.75;
    if (!strip && !(s >= 12.0)) throw DomainError("measure_arg_profile: sigma must lie in [1/2, 3/4] or be >= 12");
  }
  std::vector<ArgProfileRow> rows(sigmas.size());
  const Real ll = loglog(T);
  parallel_for(sigmas.size(), opt.threads, [&](std::size_t i) {
    const Real sigma(sigmas[i], bits);
    ArgProfileRow& row = rows[i];
    row.sigma = sigma;
    row.arg_g2 = arg_continuous(ctx, ArgTarget::G2, T, sigma).final_arg();
    row.arg_zeta = arg_continuous(ctx, ArgTarget::zeta, T, sigma).final_arg();
    const Real lp = log_power(T, sigma);
    row.bound_g2 = lp / mp::sqrt(ll);
    row.bound_zeta = lp / ll;
  });
  return rows;
}

}  // namespace zeta2
