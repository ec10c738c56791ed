#include "oracles.hpp"
#include "support.hpp"

#include "zeta2/census.hpp"
#include "zeta2/error.hpp"
#include "zeta2/funceq.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace zeta2;
using namespace zeta2::testing;

namespace {

const PrecisionContext ctx;

// First ten ordinates, frozen from the Hardy-Z bisection oracle.
const double kOrdinates[10] = {14.134725141734694, 21.022039638771555, 25.010857580145689, 30.424876125859513,
                               32.935061587739190, 37.586178158825671, 40.918719012147495, 43.327073280915000,
                               48.005150881167160, 49.773832477672302};

Real R(double x) { return Real(x, ctx.bits()); }

}  // namespace

TEST(Oracle, BisectionReproducesFrozenOrdinates) {
  const auto t = critical_line_ordinates(ctx, 2.0, 50.0);
  ASSERT_EQ(t.size(), 10u);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(t[i], kOrdinates[i], 1e-11) << i;
}

TEST(Winding, ExamplesFromTheLiterature) {
  EXPECT_EQ(winding_count(ctx, Target::zeta, Rect(0.2, 0.8, 14.0, 14.3)), 1);
  EXPECT_EQ(winding_count(ctx, Target::zeta, Rect(0.2, 0.8, 2, 3)), 0);
  EXPECT_EQ(winding_count(ctx, Target::zeta, Rect(0.5, 1.5, -0.5, 0.5)), -1);
}

TEST(Winding, RejectsDegenerateRect) {
  EXPECT_THROW(winding_count(ctx, Target::zeta, Rect(1, 1, 2, 3)), DomainError);
  EXPECT_THROW(winding_count(ctx, Target::zeta, Rect(0, 1, 3, 2)), DomainError);
}

TEST(Winding, EdgeThroughZeroIsPerturbed) {
  // Bottom edge sits on the first zero to 60 digits.
  Rect r(R(0.2), R(0.8), Real("14.1347251417346937904572519835624702707842571156992431756856", ctx.bits()), R(15));
  // The first perturbation pushes the edges outward, capturing the zero.
  EXPECT_EQ(winding_count(ctx, Target::zeta, r), 1);
  const CountResult c = count_Nk(ctx, 0, Real("14.1347251417346937904572519835624702707842571156992431756856", ctx.bits()));
  EXPECT_GT(c.perturbations, 0);
  EXPECT_EQ(c.count, c.T_used > R(kOrdinates[0]) ? 1 : 0);
}

TEST(Winding, AdditivityOverQuadrants) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 6; ++rep) {
    const double s0 = -2 + 2 * u(rng), s1 = 3 + 3 * u(rng);
    const double t0 = 2 + 40 * u(rng), t1 = t0 + 2 + 10 * u(rng);
    const double sm = s0 + (s1 - s0) * (0.3 + 0.4 * u(rng)), tm = t0 + (t1 - t0) * (0.3 + 0.4 * u(rng));
    for (Target tg : {Target::zeta, Target::zeta2}) {
      const long whole = winding_count(ctx, tg, Rect(s0, s1, t0, t1));
      const long parts = winding_count(ctx, tg, Rect(s0, sm, t0, tm)) + winding_count(ctx, tg, Rect(sm, s1, t0, tm)) +
                         winding_count(ctx, tg, Rect(s0, sm, tm, t1)) + winding_count(ctx, tg, Rect(sm, s1, tm, t1));
      EXPECT_EQ(whole, parts) << to_string(tg) << " rep " << rep;
    }
  }
}

TEST(Locate, FirstZerosMatchOracle) {
  const auto z = locate_zeros(ctx, Target::zeta, Rect(0.2, 0.8, 10, 30));
  ASSERT_EQ(z.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(z[i].position.im.to_double(), kOrdinates[i], 1e-8);
    EXPECT_LT(mp::abs(z[i].position.re - 0.5).to_double(), 1e-20);
    EXPECT_EQ(z[i].multiplicity, 1);
    EXPECT_EQ(z[i].target, Target::zeta);
  }
}

TEST(Locate, FirstTenAgainstBisection) {
  const auto z = locate_zeros(ctx, Target::zeta, Rect(-1, 2, 2, 50));
  ASSERT_EQ(z.size(), 10u);
  const auto oracle = critical_line_ordinates(ctx, 2.0, 50.0);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(z[i].position.im.to_double(), oracle[i], 1e-8);
}

TEST(Locate, WindingZeroGivesEmptyList) {
  EXPECT_TRUE(locate_zeros(ctx, Target::zeta, Rect(0.2, 0.8, 2, 3)).empty());
  EXPECT_TRUE(locate_zeros(ctx, Target::zeta2, Rect(4, 6, 10, 20)).empty());
}

TEST(Locate, RejectsRectAroundPole) {
  EXPECT_THROW(locate_zeros(ctx, Target::zeta, Rect(0.5, 1.5, -0.5, 0.5)), DomainError);
}

TEST(Locate, ConjugateSymmetry) {
  const auto up = locate_zeros(ctx, Target::zeta, Rect(0.2, 0.8, 10, 30));
  const auto down = locate_zeros(ctx, Target::zeta, Rect(0.2, 0.8, -30, -10));
  ASSERT_EQ(up.size(), down.size());
  for (std::size_t i = 0; i < up.size(); ++i) {
    const Complex& a = up[i].position;
    const Complex& b = down[down.size() - 1 - i].position;
    EXPECT_LT(abs_err(mp::conj(b), a), 1e-40);
  }
}

TEST(Locate, ZeroQualityAndRepolish) {
  const PrecisionContext fine = ctx.doubled();
  for (Target tg : {Target::zeta, Target::zeta2}) {
    const auto zs = locate_zeros(ctx, tg, Rect(-2, 6, 2, 45));
    ASSERT_FALSE(zs.empty());
    const int k = tg == Target::zeta ? 0 : 2;
    for (const auto& z : zs) {
      const ZetaJet jet = zeta_jet(ctx, z.position, k + 1);
      const double fp = mp::abs(jet.d[k + 1]).to_double();
      EXPECT_LT(mp::abs(jet.d[k]).to_double(), ctx.newton_tol() * std::max(1.0, fp));
      EXPECT_LT(z.residual.to_double(), ctx.newton_tol() * std::max(1.0, fp));
      // A few Newton steps at doubled precision.
      Complex w(z.position, fine.bits());
      for (int it = 0; it < 4; ++it) {
        const ZetaJet j2 = zeta_jet(fine, w, k + 1);
        w -= j2.d[k] / j2.d[k + 1];
      }
      EXPECT_LT(abs_err(w, z.position), 10 * ctx.newton_tol());
    }
  }
}

// Dense modulus scan of zeta'' followed by Newton with a finite-difference derivative.
TEST(Locate, Zeta2AgainstGridScan) {
  const PrecisionContext lo = ctx.with_bits(128);
  const double h = 0.1;
  const int ns = 71, nt = 381;  // sigma in [-2, 5], t in [2, 40]
  std::vector<double> mod(ns * nt);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nt; ++j) {
      const Complex s(-2 + h * i, 2 + h * j, lo.bits());
      mod[i * nt + j] = mp::abs(zeta_deriv(lo, DerivOrder(2), s)).to_double();
    }
  }
  std::vector<Complex> found;
  const Real step = mp::exp2i(-40, lo.bits());
  for (int i = 1; i + 1 < ns; ++i) {
    for (int j = 1; j + 1 < nt; ++j) {
      const double m = mod[i * nt + j];
      bool local_min = true;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && mod[(i + di) * nt + j + dj] < m) local_min = false;
      if (!local_min) continue;
      Complex z(-2 + h * i, 2 + h * j, lo.bits());
      bool ok = false;
      for (int it = 0; it < 60 && !ok; ++it) {
        const Complex f = zeta_deriv(lo, DerivOrder(2), z);
        const Complex zp = z + Complex(step);
        const Complex zm = z - Complex(step);
        Complex d = zeta_deriv(lo, DerivOrder(2), zp) - zeta_deriv(lo, DerivOrder(2), zm);
        d /= step * 2L;
        const Complex dz = f / d;
        z -= dz;
        ok = mp::abs(dz).to_double() < 1e-25;
      }
      if (!ok || mp::abs(zeta_deriv(lo, DerivOrder(2), z)).to_double() > 1e-20) continue;
      bool dup = false;
      for (const auto& g : found) dup = dup || abs_err(g, z) < 1e-10;
      if (!dup && z.im >= 2.0 && z.im <= 40.0) found.push_back(z);
    }
  }
  const auto zs = locate_zeros(ctx, Target::zeta2, Rect(-2, 5, 2, 40));
  ASSERT_EQ(zs.size(), found.size());
  ASSERT_EQ(zs.size(), 4u);
  for (const auto& z : zs) {
    double best = 1;
    for (const auto& g : found) best = std::min(best, abs_err(g, z.position));
    EXPECT_LT(best, 1e-20) << z.position;
  }
  // The left-half-plane pair member.
  EXPECT_NEAR(zs[0].position.re.to_double(), -0.3550843302104764, 1e-12);
  EXPECT_NEAR(zs[0].position.im.to_double(), 3.5908393243989674, 1e-12);
}

TEST(Count, SmallHeights) {
  EXPECT_EQ(count_Nk(ctx, 0, R(14)).count, 0);
  EXPECT_EQ(count_Nk(ctx, 0, R(15)).count, 1);
  EXPECT_EQ(count_Nk(ctx, 0, R(2)).count, 0);
  EXPECT_EQ(count_Nk(ctx, 0, R(15)).perturbations, 0);
}

TEST(Count, HundredMatchesOracle) {
  const auto oracle = critical_line_ordinates(ctx, 2.0, 100.0);
  EXPECT_EQ(oracle.size(), 29u);
  EXPECT_EQ(count_Nk(ctx, 0, R(100)).count, static_cast<long>(oracle.size()));
}

TEST(Count, RejectsBadArguments) {
  EXPECT_THROW(count_Nk(ctx, 1, R(50)), DomainError);
  EXPECT_THROW(count_Nk(ctx, 0, R(1.5)), DomainError);
}

TEST(Count, Zeta2AgreesWithLocatedMultiplicity) {
  const auto zs = locate_zeros(ctx, Target::zeta2, Rect(kZeta2SigmaMin, kZeta2SigmaMax, kCensusTMin, 120));
  for (double T : {10.0, 37.0, 64.5, 91.0, 120.0}) {
    long m = 0;
    for (const auto& z : zs) {
      if (z.position.im <= T) m += z.multiplicity;
    }
    EXPECT_EQ(count_Nk(ctx, 2, R(T)).count, m) << T;
  }
}

TEST(Count, DeskHeightStructure) {
  const auto zs = locate_zeros(ctx, Target::zeta, Rect(-1, 2, 2, 100));
  EXPECT_EQ(zs.size(), 29u);
  for (const auto& z : zs) EXPECT_LT(mp::abs(z.position.re - 0.5).to_double(), 1e-20);
  const auto z2 = locate_zeros(ctx, Target::zeta2, Rect(-2, 6, 2, 100));
  int left = 0;
  for (const auto& z : z2) {
    EXPECT_LT(z.position.re, 5.0);
    if (z.position.re < 0.0) ++left;
  }
  EXPECT_EQ(left, 1);
}

TEST(Count, LowStripIsZeroFree) {
  // 0 < t <= 2 is outside every census contour; check it directly.
  EXPECT_EQ(winding_count(ctx, Target::zeta2, Rect(-2, 6, 0.01, 2)), 0);
  double least = 1e300;
  for (double s = -2; s <= 6; s += 0.05) {
    for (double t = 0.01; t <= 2; t += 0.05) {
      least = std::min(least, mp::abs(zeta_deriv(ctx, DerivOrder(2), Complex(s, t, ctx.bits()))).to_double());
    }
  }
  EXPECT_GT(least, 1e-3);
}

TEST(SumS2, EmptyAndAdditive) {
  const auto zs = locate_zeros(ctx, Target::zeta2, Rect(kZeta2SigmaMin, kZeta2SigmaMax, kCensusTMin, 80));
  EXPECT_TRUE(sum_S2(zs, R(3.0), ctx.bits()).is_zero());
  const Real a = sum_S2(zs, R(40), ctx.bits());
  const Real b = sum_S2(zs, R(80), ctx.bits());
  Real window(ctx.bits());
  for (const auto& z : zs) {
    if (z.position.im > 40.0 && z.position.im <= 80.0) window += z.position.re - 0.5;
  }
  EXPECT_LT(mp::abs(b - (a + window)).to_double(), 1e-50);
  EXPECT_LT(mp::abs(sum_S2(ctx, R(80)) - b).to_double(), 1e-50);
  EXPECT_THROW(sum_S2(ctx, R(6.0)), DomainError);
}

TEST(StripCensus, BreaksAndDeterminism) {
  CensusOptions one, many;
  many.threads = 4;
  const std::vector<Real> brk{R(17.5), R(33.0)};
  const auto a = strip_census(ctx, Target::zeta2, R(-2), R(6), R(2), R(60), brk, one);
  const auto b = strip_census(ctx, Target::zeta2, R(-2), R(6), R(2), R(60), brk, many);
  ASSERT_EQ(a.zeros.size(), b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) {
    EXPECT_TRUE(a.zeros[i].position.re == b.zeros[i].position.re);
    EXPECT_TRUE(a.zeros[i].position.im == b.zeros[i].position.im);
  }
  EXPECT_EQ(a.winding, b.winding);
  bool has17 = false, has33 = false;
  for (const auto& t : a.breaks) {
    has17 = has17 || t == R(17.5);
    has33 = has33 || t == R(33.0);
  }
  EXPECT_TRUE(has17 && has33);
  long total = 0;
  for (long w : a.winding) total += w;
  EXPECT_EQ(total, static_cast<long>(a.zeros.size()));
  EXPECT_EQ(total, count_Nk(ctx, 2, R(60)).count);
}

TEST(ArgTrace, G2StaysNearOne) {
  const ArgTrace tr = arg_continuous(ctx, ArgTarget::G2, R(50), R(30));
  EXPECT_TRUE(tr.branch_consistent);
  EXPECT_LT(tr.total_variation.to_double(), 0.05);
  EXPECT_TRUE(tr.samples.front().first == R(40));
  EXPECT_TRUE(tr.samples.back().first == R(30));
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    EXPECT_LT(mp::abs(tr.samples[i].second - tr.samples[i - 1].second).to_double(), M_PI / 2);
  }
}

TEST(ArgTrace, RiemannVonMangoldt) {
  for (double T : {30.0, 50.0, 77.7, 100.0}) {
    const ArgTrace tr = arg_continuous(ctx, ArgTarget::zeta, R(T), R(0.5));
    const double smooth = T / (2 * M_PI) * std::log(T / (2 * M_PI * M_E)) + 7.0 / 8;
    const double predicted = smooth + tr.final_arg().to_double() / M_PI;
    EXPECT_NEAR(predicted, static_cast<double>(count_Nk(ctx, 0, R(T)).count), 0.05) << T;
  }
}

TEST(ArgTrace, QuotientMatchesDifference) {
  for (double T : {20.0, 45.5}) {
    const Real g = arg_continuous(ctx, ArgTarget::G2, R(T), R(0.75)).final_arg();
    const Real z = arg_continuous(ctx, ArgTarget::zeta, R(T), R(0.75)).final_arg();
    const Real q = arg_continuous(ctx, ArgTarget::G2_over_zeta, R(T), R(0.75)).final_arg();
    EXPECT_LT(mp::abs(q - (g - z)).to_double(), 1e-30) << T;
  }
}

TEST(ArgTrace, ZeroOnLineIsReported) {
  const Real t("14.1347251417346937904572519835624702707842571156992431756856", ctx.bits());
  EXPECT_THROW(arg_continuous(ctx, ArgTarget::zeta, t, R(0.5)), BoundaryZero);
  EXPECT_THROW(arg_continuous(ctx, ArgTarget::zeta, R(1.0), R(0.5)), DomainError);
}
