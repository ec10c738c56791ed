#include "zeta2/error.hpp"
#include "zeta2/zeta.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace zeta2;
using zeta2::testing::rel_err;

namespace {

const PrecisionContext ctx;
const double tol = std::ldexp(1.0, static_cast<int>(ctx.kernel_tol_exp2()));
const PrecisionContext ctx256(256);

Complex c(double re, double im, mpfr_prec_t bits = ctx.bits()) { return Complex(re, im, bits); }

Complex zeta(const PrecisionContext& p, const Complex& s, int k = 0) {
  return zeta_deriv(p, DerivOrder(k), s);
}

// Alternating-series oracle (Borwein's acceleration of the eta function),
// returning zeta, zeta', zeta''. Independent of the Euler-Maclaurin path.
std::vector<Complex> eta_oracle(const Complex& s_in) {
  const mpfr_prec_t b = 640;
  const int n = 220;
  const Complex s(s_in, b);
  std::vector<Real> d(n + 1, Real(b));
  Real term(1L, b);  // (n+i-1)! 4^i / ((n-i)! (2i)!) scaled by n
  Real acc(b);
  // term_0 = (n-1)!/n!, term_{i+1}/term_i = 4 (n+i)(n-i) / ((2i+1)(2i+2))
  term = Real(1L, b) / Real(static_cast<long>(n), b);
  for (int i = 0; i <= n; ++i) {
    acc += term;
    d[i] = acc * static_cast<long>(n);
    term *= static_cast<long>(4L * (n + i) * (n - i));
    term /= static_cast<long>((2L * i + 1) * (2L * i + 2));
  }
  std::vector<Complex> eta(3, Complex(b));
  for (int k = 0; k < n; ++k) {
    Real w = d[k] - d[n];
    if (k % 2 == 1) w = -w;
    const Real lk = mp::log(Real(static_cast<long>(k + 1), b));
    Complex p = mp::exp(Complex(-(s.re * lk), -(s.im * lk))) * w;
    eta[0] += p;
    p *= -lk;
    eta[1] += p;
    p *= -lk;
    eta[2] += p;
  }
  for (auto& e : eta) e /= -d[n];
  const Real l2 = mp::ln2(b);
  const Complex two = mp::exp(Complex(l2 - s.re * l2, -(s.im * l2)));  // 2^(1-s)
  const Complex h = 1.0 - two;
  const Complex h1 = two * l2;
  const Complex h2 = -(two * l2 * l2);
  Complex z0 = eta[0] / h;
  Complex z1 = (eta[1] - z0 * h1) / h;
  Complex z2 = (eta[2] - z1 * h1 * 2L - z0 * h2) / h;
  return {z0, z1, z2};
}

}  // namespace

TEST(Zeta, ClassicalValues) {
  const Real pi = mp::pi(ctx.bits());
  EXPECT_LT(rel_err(zeta(ctx, c(2, 0)), Complex(pi * pi / 6L)), tol);
  EXPECT_LT(rel_err(zeta(ctx, c(-1, 0)), Complex(Real(-1L, ctx.bits()) / 12L)), tol);
  EXPECT_LT(rel_err(zeta(ctx, c(0, 0)), c(-0.5, 0)), tol);
  // zeta'(0) = -log(2 pi)/2
  const Real lz = mp::log(pi * 2L) / -2L;
  EXPECT_LT(rel_err(zeta(ctx, c(0, 0), 1), Complex(lz)), tol);
}

TEST(Zeta, PoleRejected) {
  EXPECT_THROW(zeta(ctx, c(1, 0)), PoleError);
  EXPECT_THROW(log_deriv_ratio(ctx, RatioKind::zp_over_z, c(1, 0)), PoleError);
  EXPECT_THROW(zeta_deriv(ctx, DerivOrder(3), c(1.2, 5)), DomainError);
  EXPECT_THROW(DerivOrder(-1), DomainError);
  EXPECT_NO_THROW(zeta_deriv(ctx, DerivOrder(4), c(2, 5)));
}

TEST(Zeta, SecondDerivativeAtThreeSeriesOracle) {
  // sum_{n=2}^{N} (log n)^2 / n^3 plus tail enclosed by integrals over [N+1,inf) and [N,inf)
  const long N = 1000000;
  long double sum = 0, comp = 0;
  for (long n = N; n >= 2; --n) {
    const long double l = std::log(static_cast<long double>(n));
    const long double y = l * l / (static_cast<long double>(n) * n * n) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  auto tail = [](long double a) {
    const long double l = std::log(a);
    return (l * l / 2 + l / 2 + 0.25L) / (a * a);
  };
  const long double lo = sum + tail(N + 1.0L), hi = sum + tail(static_cast<long double>(N));
  const double ours = zeta(ctx, c(3, 0), 2).re.to_double();
  EXPECT_GE(ours, static_cast<double>(lo) - 1e-17);
  EXPECT_LE(ours, static_cast<double>(hi) + 1e-17);
}

TEST(Zeta, FirstDerivativeFiniteDifference) {
  const Complex s = c(2, 5, 256);
  const Real h(1e-10, 256);
  const Complex fd = (zeta(ctx256, s + h) - zeta(ctx256, s - h)) / (h * 2L);
  EXPECT_LT(rel_err(zeta(ctx256, s, 1), fd), 1e-18);
}

TEST(VonMangoldt, Examples) {
  EXPECT_TRUE(von_mangoldt(ctx, 1).is_zero());
  EXPECT_EQ(von_mangoldt(ctx, 8), mp::ln2(ctx.bits()));
  EXPECT_TRUE(von_mangoldt(ctx, 12).is_zero());
  EXPECT_EQ(von_mangoldt(ctx, 97), mp::log(Real(97L, ctx.bits())));
  EXPECT_EQ(von_mangoldt(ctx, 3 * 3 * 3 * 3), mp::log(Real(3L, ctx.bits())));
  EXPECT_THROW(von_mangoldt(ctx, 0), DomainError);
}

TEST(LogDerivRatio, AtTenSeriesOracle) {
  const mpfr_prec_t b = 256;
  Real sum(b), p10(b);
  for (std::uint64_t n = 2; n <= 1000000; ++n) {
    const Real lam = von_mangoldt(PrecisionContext(256), n);
    if (lam.is_zero()) continue;
    mpfr_ui_pow_ui(p10.raw(), n, 10, MPFR_RNDN);
    sum += lam / p10;
  }
  // tail < sum_{n>1e6} log n / n^10 < 1e-52
  const Complex ours = log_deriv_ratio(ctx, RatioKind::zp_over_z, c(10, 0));
  EXPECT_LT(rel_err(ours, Complex(-sum)), 1e-45);
}

TEST(LogDerivRatio, SecondOverFirstIdentity) {
  const Complex s = c(3, 7);
  const Real h = mp::exp2i(-ctx.mantissa_bits() / 3, ctx.bits());
  auto L = [&](const Complex& z) { return log_deriv_ratio(ctx, RatioKind::zp_over_z, z); };
  const Complex dL = (L(s + h) - L(s - h)) / (h * 2L);
  const Complex rhs = dL + mp::sqr(L(s));
  EXPECT_LT(rel_err(log_deriv_ratio(ctx, RatioKind::zpp_over_z, s), rhs), 1e-30);
  const Complex q = log_deriv_ratio(ctx, RatioKind::zpp_over_z, s) / L(s);
  EXPECT_LT(rel_err(log_deriv_ratio(ctx, RatioKind::zpp_over_zp, s), q), 1e-50);
}

TEST(LogDerivRatio, SimplePoleAtOne) {
  for (int j = 1; j <= 12; ++j) {
    const Real eps(std::pow(10.0, -j), ctx.bits());
    const Complex s = Complex(eps + 1.0);
    const Complex v = log_deriv_ratio(ctx, RatioKind::zp_over_z, s) * eps;
    EXPECT_LT(mp::abs(v + 1.0).to_double(), std::pow(10.0, -j)) << j;
  }
}

TEST(LogDerivRatio, DenominatorZeroAtZetaZero) {
  // the first nontrivial zero, to 60 digits
  const Complex rho(Real("0.5", ctx.bits()), Real("14.1347251417346937904572519835624702707842571156992431756856", ctx.bits()));
  EXPECT_THROW(log_deriv_ratio(ctx, RatioKind::zp_over_z, rho), DenominatorZero);
  EXPECT_THROW(log_deriv_ratio(ctx, RatioKind::zpp_over_z, rho), DenominatorZero);
  EXPECT_NO_THROW(log_deriv_ratio(ctx, RatioKind::zpp_over_zp, rho));
}

TEST(LogDerivRatio, SeriesRegimeMatchesQuotient) {
  for (const auto& s : {c(40, 3), c(60, -20), c(35, 100)}) {
    const ZetaJet j = zeta_jet(ctx, s, 2);
    for (auto kind : {RatioKind::zp_over_z, RatioKind::zpp_over_zp, RatioKind::zpp_over_z}) {
      EXPECT_LT(rel_err(log_deriv_ratio(ctx, kind, s), ratio_from_jet(ctx, kind, j)), 64 * tol)
          << to_string(kind) << " " << s;
    }
  }
}

TEST(Properties, SeriesContinuationAgreement) {
  std::mt19937_64 rng(2024);
  const auto pts = zeta2::testing::random_points(rng, 200, 2, 12, -30, 30, ctx.bits());
  const double bound = std::ldexp(1.0, -static_cast<int>(ctx.mantissa_bits() - 2 * ctx.guard_bits()));
  for (const auto& s : pts) {
    const auto oracle = eta_oracle(s);
    const ZetaJet j = zeta_jet(ctx, s, 2);
    for (int k = 0; k < 3; ++k) EXPECT_LT(rel_err(j.d[k], oracle[k]), bound) << "k=" << k << " s=" << s;
  }
}

TEST(Properties, Reflection) {
  std::mt19937_64 rng(5);
  const auto pts = zeta2::testing::random_points(rng, 30, -15, 15, 0.5, 200, ctx.bits());
  for (const auto& s : pts) {
    const ZetaJet a = zeta_jet(ctx, s, 2);
    const ZetaJet b = zeta_jet(ctx, mp::conj(s), 2);
    for (int k = 0; k < 3; ++k) EXPECT_LT(rel_err(b.d[k], mp::conj(a.d[k])), tol);
  }
}

TEST(Properties, DerivativeConsistencyFivePoint) {
  std::mt19937_64 rng(99);
  const auto pts = zeta2::testing::random_points(rng, 50, -10, 10, 2, 60, 256);
  const Real h(1e-10, 256);
  for (const auto& s : pts) {
    const Complex f2m = zeta(ctx256, s - h * 2L), f1m = zeta(ctx256, s - h), f0 = zeta(ctx256, s);
    const Complex f1p = zeta(ctx256, s + h), f2p = zeta(ctx256, s + h * 2L);
    const Complex d1 = (f2m - f2p + (f1p - f1m) * 8L) / (h * 12L);
    const Complex d2 = (-(f2p + f2m) + (f1p + f1m) * 16L - f0 * 30L) / (h * h * 12L);
    const ZetaJet j = zeta_jet(ctx256, s, 2);
    EXPECT_LT(rel_err(j.d[1], d1), 1e-8) << s;
    EXPECT_LT(rel_err(j.d[2], d2), 1e-8) << s;
  }
}

TEST(Properties, ThirdDerivativeJet) {
  const Complex s = c(-1.5, 31);
  const Real h = mp::exp2i(-ctx.mantissa_bits() / 3, ctx.bits());
  const Complex fd = (zeta(ctx, s + h, 2) - zeta(ctx, s - h, 2)) / (h * 2L);
  EXPECT_LT(rel_err(zeta_jet(ctx, s, 3).d[3], fd), 1e-30);
}

TEST(Properties, LeftHalfPlaneLogDerivativeBounds) {
  const Real l2 = mp::ln2(ctx.bits());
  const Real c1 = l2 * 1.5 + 1.0;
  const Real c2 = l2 * l2 * (19.0 / 8) + l2 * (13.0 / 4) + 2.5;
  for (int sigma = -1; sigma >= -30; --sigma) {
    const Real p2 = mp::exp2i(sigma, ctx.bits());
    for (int t = 2; t <= 50; ++t) {
      const Complex w = c(1.0 - sigma, -t);  // 1 - s
      const ZetaJet j = zeta_jet(ctx, w, 2);
      const Real r1 = mp::abs(ratio_from_jet(ctx, RatioKind::zp_over_z, j));
      const Real r2 = mp::abs(ratio_from_jet(ctx, RatioKind::zpp_over_z, j));
      EXPECT_LE(r1, p2 * c1) << sigma << "," << t;
      EXPECT_LE(r2, p2 * c2) << sigma << "," << t;
    }
  }
}
