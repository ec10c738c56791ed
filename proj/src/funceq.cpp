#include "zeta2/funceq.hpp"

#include "zeta2/error.hpp"
#include "zeta2/special.hpp"
#include "zeta2/zeta.hpp"

#include <cmath>
#include <string>

namespace zeta2 {

namespace {

// Inner computations carry 32 extra bits and are rounded on the way out.
PrecisionContext inner(const PrecisionContext& ctx) { return ctx.with_bits(ctx.mantissa_bits() + 32); }

bool near_integer(const Complex& s, double tol, long& n) {
  if (std::fabs(s.im.to_double()) >= tol) return false;
  const Real r = mp::round(s.re);
  n = r.to_long();
  return mp::abs(s.re - r) < tol;
}

void check_odd_pole(const PrecisionContext& ctx, const Complex& s, const char* fn) {
  long n = 0;
  if (near_integer(s, ctx.newton_tol(), n) && n > 0 && n % 2 != 0) {
    throw PoleError(std::string(fn) + " has a pole at s = " + std::to_string(n));
  }
}

// The cot form is singular at even integers (zeros of F for n <= 0, removable for n > 0),
// the tan form at odd ones; pick by half-plane like the evaluator of F itself.
bool use_cot_form(const Complex& s) { return s.re <= 0.5; }

Complex half_pi(const Complex& s) { return s * (mp::pi(s.bits()) / 2L); }

Complex finish(Complex z, const PrecisionContext& ctx, const char* where) {
  z.round_to(ctx.bits());
  return require_finite(z, where);
}

struct LogDerivParts {
  Complex flogd;
  Complex flogd_prime;
};

LogDerivParts logderiv_parts(const PrecisionContext& ctx, const Complex& s_in) {
  const PrecisionContext wc = inner(ctx);
  const Complex s(s_in, wc.bits());
  const Real pi = mp::pi(wc.bits());
  const Real pi2_4 = pi * pi / 4L;
  const Real log2pi = mp::log(pi * 2L);
  long n = 0;
  if (use_cot_form(s)) {
    if (near_integer(s, ctx.newton_tol(), n) && n % 2 == 0) {
      throw PoleError("F'/F has a pole at s = " + std::to_string(n));
    }
    const Complex w = 1.0 - s;
    const Complex ct = mp::cot(half_pi(s));
    Complex flogd = (ct * (pi / 2L) + log2pi) - digamma(wc, w);
    Complex prime = trigamma(wc, w) - (mp::sqr(ct) + 1.0) * pi2_4;
    return {std::move(flogd), std::move(prime)};
  }
  check_odd_pole(ctx, s, "F'/F");
  const Complex tn = mp::reciprocal(mp::cot(half_pi(s)));
  Complex flogd = (tn * (pi / 2L) + log2pi) - digamma(wc, s);
  Complex prime = (mp::sqr(tn) + 1.0) * pi2_4 - trigamma(wc, s);
  return {std::move(flogd), std::move(prime)};
}

void check_nonzero(const PrecisionContext& ctx, const Complex& den, const Complex& scale, const char* what) {
  const Real a = mp::abs(den);
  if (a.is_zero() || a < mp::max(mp::abs(scale), Real(1L, a.bits())) * ctx.newton_tol()) {
    throw DenominatorZero(std::string(what) + " vanishes near s");
  }
}

}  // namespace

Complex F(const PrecisionContext& ctx, const Complex& s_in) {
  require_finite(s_in, "F");
  check_odd_pole(ctx, s_in, "F");
  const PrecisionContext wc = inner(ctx);
  const Complex s(s_in, wc.bits());
  const Real pi = mp::pi(wc.bits());
  if (use_cot_form(s)) {
    // 2^s pi^(s-1) sin(pi s/2) Gamma(1-s)
    const Complex p = mp::exp(s * mp::log(pi * 2L)) / pi;
    return finish(p * mp::sin(half_pi(s)) * gamma(wc, 1.0 - s), ctx, "F");
  }
  // (2 pi)^s / (2 cos(pi s/2) Gamma(s)): the same function without the 0 * inf at even s.
  const Complex p = mp::exp(s * mp::log(pi * 2L));
  Complex den = mp::cos(half_pi(s)) * gamma(wc, s);
  den *= 2L;
  return finish(p / den, ctx, "F");
}

Complex F_logderiv(const PrecisionContext& ctx, const Complex& s) {
  require_finite(s, "F_logderiv");
  return finish(logderiv_parts(ctx, s).flogd, ctx, "F_logderiv");
}

Complex F_logderiv_prime(const PrecisionContext& ctx, const Complex& s) {
  require_finite(s, "F_logderiv_prime");
  return finish(logderiv_parts(ctx, s).flogd_prime, ctx, "F_logderiv_prime");
}

Complex F2_over_F(const PrecisionContext& ctx, const Complex& s) {
  require_finite(s, "F2_over_F");
  auto p = logderiv_parts(ctx, s);
  return finish(p.flogd_prime + mp::sqr(p.flogd), ctx, "F2_over_F");
}

Complex F2_over_F1(const PrecisionContext& ctx, const Complex& s) {
  require_finite(s, "F2_over_F1");
  auto p = logderiv_parts(ctx, s);
  check_nonzero(ctx, p.flogd, p.flogd_prime, "F'/F");
  Complex f2 = p.flogd_prime + mp::sqr(p.flogd);
  return finish(f2 / p.flogd, ctx, "F2_over_F1");
}

FuncEqTerm funceq_term(const PrecisionContext& ctx, const Complex& s) {
  auto p = logderiv_parts(ctx, s);
  check_nonzero(ctx, p.flogd, p.flogd_prime, "F'/F");
  Complex f2 = p.flogd_prime + mp::sqr(p.flogd);
  Complex f21 = f2 / p.flogd;
  return FuncEqTerm{F(ctx, s), finish(std::move(p.flogd), ctx, "funceq_term"),
                    finish(std::move(f2), ctx, "funceq_term"), finish(std::move(f21), ctx, "funceq_term")};
}

Complex G2(const PrecisionContext& ctx, const Complex& s_in) {
  const Complex z2 = zeta_deriv(ctx, DerivOrder(2), s_in);
  const PrecisionContext wc = inner(ctx);
  const Complex s(s_in, wc.bits());
  const Real l2 = mp::ln2(wc.bits());
  Complex g = mp::exp(s * l2) * z2;
  g /= l2 * l2;
  return finish(std::move(g), ctx, "G2");
}

namespace {

void check_remainder_domain(const Complex& s) {
  if (mp::abs(s.im) < 2.0) throw DomainError("remainder_term needs |Im s| >= 2");
}

Complex remainder_from(const PrecisionContext& ctx, const Complex& s, Complex& f2f) {
  auto p = logderiv_parts(ctx, s);
  f2f = p.flogd_prime + mp::sqr(p.flogd);
  check_nonzero(ctx, f2f, p.flogd, "F''/F");
  check_nonzero(ctx, p.flogd, p.flogd_prime, "F'/F");
  const Complex f21 = f2f / p.flogd;
  const ZetaJet w = zeta_jet(ctx, 1.0 - s, 2);
  const Complex r1 = ratio_from_jet(ctx, RatioKind::zp_over_z, w);
  const Complex r2 = ratio_from_jet(ctx, RatioKind::zpp_over_z, w);
  return r1 * 2L / f21 - r2 / f2f;
}

}  // namespace

Remainder remainder_term(const PrecisionContext& ctx, const Complex& s) {
  require_finite(s, "remainder_term");
  check_remainder_domain(s);
  Complex f2f(ctx.bits());
  Complex r = remainder_from(ctx, s, f2f);
  const Complex lhs = 1.0 - r;
  const Complex rhs = log_deriv_ratio(ctx, RatioKind::zpp_over_z, s) / f2f;
  Real res = mp::abs(lhs - rhs);
  res.round_to(ctx.bits());
  return Remainder{finish(std::move(r), ctx, "remainder_term"), std::move(res)};
}

Complex remainder_value(const PrecisionContext& ctx, const Complex& s) {
  require_finite(s, "remainder_value");
  check_remainder_domain(s);
  Complex f2f(ctx.bits());
  return finish(remainder_from(ctx, s, f2f), ctx, "remainder_value");
}

}  // namespace zeta2
