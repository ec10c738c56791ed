#include "oracles.hpp"
#include "support.hpp"

#include "zeta2/audit.hpp"
#include "zeta2/error.hpp"
#include "zeta2/funceq.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace zeta2;
using namespace zeta2::testing;

namespace {

const PrecisionContext ctx;

Real R(double x) { return Real(x, ctx.bits()); }

bool same(const AuditReport& a, const AuditReport& b) {
  return a.worst_point.re == b.worst_point.re && a.worst_point.im == b.worst_point.im &&
         a.worst_margin == b.worst_margin && a.pass == b.pass && a.nodes == b.nodes;
}

}  // namespace

TEST(Grid, ClosedAxes) {
  const auto a = grid_axis(R(0), R(1), 0.3);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_TRUE(a.back() == R(1));
  EXPECT_EQ(grid_axis(R(2), R(2), 0.5).size(), 1u);
  EXPECT_EQ(grid_axis(R(12), R(30), 0.5).size(), 37u);
  EXPECT_THROW(grid_axis(R(0), R(1), 0.0), DomainError);
}

TEST(Audit, ConditionNames) {
  for (const char* n : {"C1", "C2", "C3", "C4", "C5", "L23", "L25", "L26"}) {
    EXPECT_STREQ(to_string(parse_condition(n)), n);
  }
  EXPECT_THROW(parse_condition("C9"), DomainError);
}

TEST(Audit, C1PassesFromTwelve) {
  const Rect region(12, 30, 0, 100);
  const AuditReport r = audit(ctx, Condition::C1, region, 0.5);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.worst_margin, 0.0);
  EXPECT_EQ(r.nodes, 37 * 201);
  EXPECT_TRUE(region.contains(r.worst_point));
  // |G2 - 1| decays like (2/3)^sigma, faster than the majorant, so the margin is least at the right edge.
  EXPECT_TRUE(r.worst_point.re == R(30));
}

TEST(Audit, C2IntermediateBound) {
  const AuditReport r = audit(ctx, Condition::C2, Rect(-40, -10, 2, 20), 3);
  EXPECT_TRUE(r.pass) << mp::to_string(r.worst_margin, 6);
  EXPECT_NE(r.note.find("intermediate"), std::string::npos);
}

TEST(Audit, C3HighStrip) {
  const AuditReport r = audit(ctx, Condition::C3, Rect(-30, 0.5, 100, 112), 1.5);
  EXPECT_TRUE(r.pass) << r.worst_point;
}

TEST(Audit, C4SinglePointAgainstDoubledPrecision) {
  const AuditReport r = audit(ctx, Condition::C4, Rect(-1, -1, 50, 50), 0.5);
  EXPECT_EQ(r.nodes, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.worst_point.re == R(-1) && r.worst_point.im == R(50));
  const PrecisionContext fine = ctx.doubled();
  const Complex s(-1.0, 50.0, fine.bits());
  const Complex q = log_deriv_ratio(fine, RatioKind::zp_over_z, s);
  EXPECT_LT(q.re, 0.0);
  const Complex coarse = log_deriv_ratio(ctx, RatioKind::zp_over_z, Complex(-1.0, 50.0, ctx.bits()));
  EXPECT_LT(rel_err(coarse, q), 1e-40);
}

TEST(Audit, DegenerateRegionIsOnePoint) {
  const AuditReport a = audit(ctx, Condition::C1, Rect(13, 13, 7, 7), 1);
  EXPECT_EQ(a.nodes, 1);
  EXPECT_TRUE(a.pass);
  const Real m = audit_margin(ctx, Condition::C1, Complex(13.0, 7.0, ctx.bits()));
  EXPECT_TRUE(a.worst_margin == m);
}

TEST(Audit, C5OnDeskLine) {
  const AuditReport r = audit(ctx, Condition::C5, Rect(-30, 40, 30, 30), 0.5);
  EXPECT_TRUE(r.pass);
  EXPECT_NE(r.note.find("no zero found at resolution h"), std::string::npos);
}

TEST(Audit, RegionMismatch) {
  EXPECT_THROW(audit(ctx, Condition::C1, Rect(10, 20, 0, 1), 1), DomainError);
  EXPECT_THROW(audit(ctx, Condition::C2, Rect(-20, -5, 2, 3), 1), DomainError);
  EXPECT_THROW(audit(ctx, Condition::C3, Rect(-2, 1, 30, 31), 1), DomainError);
  EXPECT_THROW(audit(ctx, Condition::C4, Rect(-2, 0, 20, 31), 1), DomainError);
  EXPECT_THROW(audit(ctx, Condition::C5, Rect(-2, 0, 30, 31), 1), DomainError);
  EXPECT_THROW(audit(ctx, Condition::L25, Rect(0.5, 0.9, 30, 31), 1), DomainError);
  EXPECT_THROW(audit(ctx, Condition::L23, Rect(0.5, 0.9, 30, 31), 0.1), DomainError);
  EXPECT_THROW(audit(ctx, Condition::C1, Rect(14, 12, 0, 1), 1), DomainError);
}

TEST(Audit, ReproducibleAcrossRunsAndThreads) {
  AuditOptions many;
  many.threads = 4;
  const Rect region(-30, 0.5, 29, 40);
  const AuditReport a = audit(ctx, Condition::C4, region, 1.5);
  const AuditReport b = audit(ctx, Condition::C4, region, 1.5);
  const AuditReport c = audit(ctx, Condition::C4, region, 1.5, many);
  EXPECT_TRUE(same(a, b));
  EXPECT_TRUE(same(a, c));
}

TEST(Audit, RefinementNeverImproves) {
  for (Condition c : {Condition::C1, Condition::C3}) {
    const Rect region = c == Condition::C1 ? Rect(12, 20, 0, 30) : Rect(-10, 0.5, 100, 106);
    const AuditReport coarse = audit(ctx, c, region, 2);
    const AuditReport fine = audit(ctx, c, region, 1);
    EXPECT_LE(fine.worst_margin, coarse.worst_margin) << to_string(c);
    if (!coarse.pass) EXPECT_FALSE(fine.pass);
  }
}

TEST(Audit, GrowthShapes) {
  const AuditReport l25 = audit(ctx, Condition::L25, Rect(0.5, 0.75, 30, 90), 0.25);
  EXPECT_TRUE(l25.pass) << mp::to_string(l25.worst_margin, 6);
  const AuditReport l23 = audit(ctx, Condition::L23, Rect(0.75, 2.75, 30, 90), 1);
  EXPECT_TRUE(l23.pass) << mp::to_string(l23.worst_margin, 6);
  const AuditReport l26 = audit(ctx, Condition::L26, Rect(0.5, 3.5, 30, 90), 1);
  EXPECT_TRUE(l26.pass) << mp::to_string(l26.worst_margin, 6);
}

TEST(ArgProfile, BoundsAndSanityColumn) {
  double prev = 0;
  for (double T : {30.0, 60.0, 120.0, 240.0}) {
    const auto rows = measure_arg_profile(ctx, R(T), {R(0.75), R(12)});
    ASSERT_EQ(rows.size(), 2u);
    const double b = rows[0].bound_g2.to_double();
    const double ll = std::log(std::log(T));
    EXPECT_NEAR(b, std::sqrt(std::log(T)) / std::sqrt(ll), 1e-12 * b);
    EXPECT_GT(b, prev);
    prev = b;
    EXPECT_LT(mp::abs(rows[1].arg_g2).to_double(), 0.05);
  }
  EXPECT_THROW(measure_arg_profile(ctx, R(20), {R(0.5)}), DomainError);
  EXPECT_THROW(measure_arg_profile(ctx, R(50), {R(1.0)}), DomainError);
}

// arg zeta(1/2+iT) = pi S(T) with S(T) = N(T) - theta(T)/pi - 1.
TEST(ArgProfile, ZetaMatchesZeroCount) {
  const auto rows = measure_arg_profile(ctx, R(100), {R(0.5)});
  const auto zs = locate_zeros(ctx, Target::zeta, Rect(-1, 2, 2, 100));
  const double S = static_cast<double>(zs.size()) - rs_theta(100) / M_PI - 1;
  EXPECT_NEAR(rows[0].arg_zeta.to_double(), M_PI * S, 1e-9);
}

// arg G2(1/2+iT) rebuilt from the argument principle on [1/2, 40] x [2, T]:
// horizontal value at t = 2, change up the critical line, plus 2pi per enclosed zero.
TEST(ArgProfile, G2MatchesZeroAssembly) {
  const double T = 100;
  const auto rows = measure_arg_profile(ctx, R(T), {R(0.5)});
  const auto right = locate_zeros(ctx, Target::zeta2, Rect(0.5, 6, 2, T));
  long n = 0;
  for (const auto& z : right) n += z.multiplicity;
  const double base = arg_continuous(ctx, ArgTarget::G2, R(2), R(0.5)).final_arg().to_double();
  const PrecisionContext lo = ctx.with_bits(128);
  double prev = mp::arg(G2(lo, Complex(0.5, 2.0, lo.bits()))).to_double();
  double climb = 0;
  for (double t = 2.005; t <= T + 1e-9; t += 0.005) {
    const double a = mp::arg(G2(lo, Complex(0.5, t, lo.bits()))).to_double();
    double d = a - prev;
    d -= 2 * M_PI * std::round(d / (2 * M_PI));
    ASSERT_LT(std::fabs(d), M_PI / 2) << t;
    climb += d;
    prev = a;
  }
  EXPECT_NEAR(rows[0].arg_g2.to_double(), base + climb + 2 * M_PI * n, 1e-8);
}
