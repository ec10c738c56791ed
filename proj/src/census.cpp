#include "zeta2/census.hpp"

#include "zeta2/error.hpp"
#include "zeta2/parallel.hpp"
#include "zeta2/special.hpp"
#include "zeta2/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>

namespace zeta2 {

const char* to_string(Target t) noexcept { return t == Target::zeta ? "zeta" : "zeta2"; }

const char* to_string(ArgTarget t) noexcept {
  switch (t) {
    case ArgTarget::zeta: return "zeta";
    case ArgTarget::G2: return "G2";
    case ArgTarget::G2_over_zeta: return "G2_over_zeta";
  }
  return "?";
}

Rect::Rect(double smin, double smax, double tmin, double tmax, mpfr_prec_t bits)
    : sigma_min(smin, bits), sigma_max(smax, bits), t_min(tmin, bits), t_max(tmax, bits) {}

Rect::Rect(Real smin, Real smax, Real tmin, Real tmax)
    : sigma_min(std::move(smin)), sigma_max(std::move(smax)), t_min(std::move(tmin)), t_max(std::move(tmax)) {}

void Rect::validate() const {
  if (!(sigma_min < sigma_max) || !(t_min < t_max)) throw DomainError("degenerate rectangle " + to_string());
}

bool Rect::contains(const Complex& s) const {
  return s.re >= sigma_min && s.re <= sigma_max && s.im >= t_min && s.im <= t_max;
}

double Rect::diameter() const {
  return std::hypot((sigma_max - sigma_min).to_double(), (t_max - t_min).to_double());
}

std::string Rect::to_string() const {
  std::ostringstream os;
  os << "[" << mp::to_string(sigma_min, 12) << "," << mp::to_string(sigma_max, 12) << "]x["
     << mp::to_string(t_min, 12) << "," << mp::to_string(t_max, 12) << "]";
  return os.str();
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap(double a) {
  while (a > M_PI) a -= kTwoPi;
  while (a <= -M_PI) a += kTwoPi;
  return a;
}

// Thrown when a contour passes (numerically) through a zero of the target.
struct EdgeTrouble {};

struct Point {
  Real s, t;
};

struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    const int c = mpfr_cmp(a.s.raw(), b.s.raw());
    if (c != 0) return c < 0;
    return mpfr_cmp(a.t.raw(), b.t.raw()) < 0;
  }
};

struct Sample {
  double arg = 0;
  std::complex<double> dlog;  // f'/f
  bool tiny = false;
};

int order_of(Target t) { return t == Target::zeta ? 0 : 2; }

// Coordinates carry enough bits that repeated halving stays exact, so shared
// edges of neighbouring boxes hit the same cached samples.
mpfr_prec_t coord_bits(const PrecisionContext& ctx) { return 4 * ctx.bits(); }

std::complex<double> to_cd(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

class Sampler {
 public:
  Sampler(const PrecisionContext& ctx, Target target, const CensusOptions& opt)
      : ctx_(ctx), target_(target), opt_(opt), cb_(zeta2::coord_bits(ctx)),
        tiny_exp_(-ctx.mantissa_bits() / 2), min_len_(std::ldexp(1.0, -static_cast<int>(ctx.mantissa_bits() / 4) - 4)) {}

  const Sample& at(const Point& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    if (++evals_ > opt_.sample_budget) throw NonConvergence("boundary sample budget exhausted");
    const Complex s(Real(p.s, ctx_.bits()), Real(p.t, ctx_.bits()));
    const int k = order_of(target_);
    const ZetaJet jet = zeta_jet(ctx_, s, k + 1);
    const Complex& f = jet.d[static_cast<std::size_t>(k)];
    Sample out;
    const Real af = mp::abs(f);
    out.tiny = af.is_zero() || af.exponent2() <= tiny_exp_;
    if (!out.tiny) {
      out.arg = mp::arg(f).to_double();
      out.dlog = to_cd(jet.d[static_cast<std::size_t>(k) + 1] / f);
    }
    return cache_.emplace(Point{Real(p.s, cb_), Real(p.t, cb_)}, out).first->second;
  }

  // Delta arg f along the straight segment a -> b.
  double segment(const Point& a, const Point& b) {
    const Sample sa = at(a);
    const Sample sb = at(b);
    if (sa.tiny || sb.tiny) throw EdgeTrouble{};
    const double len = std::hypot((b.s - a.s).to_double(), (b.t - a.t).to_double());
    const double d = wrap(sb.arg - sa.arg);
    const bool split = len > opt_.max_segment || std::fabs(d) >= M_PI / 2 ||
                       std::abs(sa.dlog) * len > 1.0 || std::abs(sb.dlog) * len > 1.0 ||
                       !std::isfinite(std::abs(sa.dlog)) || !std::isfinite(std::abs(sb.dlog));
    if (!split) return d;
    if (len < min_len_) throw EdgeTrouble{};
    Point m{a.s + b.s, a.t + b.t};
    m.s.ldexp(-1);
    m.t.ldexp(-1);
    return segment(a, m) + segment(m, b);
  }

  // Winding of the positively oriented boundary of [s0,s1]x[t0,t1].
  long winding(const Real& s0, const Real& s1, const Real& t0, const Real& t1) {
    const Point a{s0, t0}, b{s1, t0}, c{s1, t1}, d{s0, t1};
    const double total = segment(a, b) + segment(b, c) + segment(c, d) + segment(d, a);
    const double w = total / kTwoPi;
    const long r = std::lround(w);
    if (std::fabs(w - static_cast<double>(r)) > 0.1) {
      throw NonConvergence("non-integral winding " + std::to_string(w));
    }
    return r;
  }

  mpfr_prec_t coord_bits() const { return cb_; }
  long evaluations() const { return evals_; }
  const PrecisionContext& ctx() const { return ctx_; }
  Target target() const { return target_; }
  const CensusOptions& options() const { return opt_; }

 private:
  const PrecisionContext& ctx_;
  Target target_;
  CensusOptions opt_;
  mpfr_prec_t cb_;
  long tiny_exp_;
  double min_len_;
  long evals_ = 0;
  std::map<Point, Sample, PointLess> cache_;
};

// Deterministic perturbation schedule: 0, +1, -1, +2, -2, ..., +4, -4 (in units of eps).
constexpr int kPerturbations = 8;
int schedule(int attempt) { return attempt == 0 ? 0 : ((attempt + 1) / 2) * (attempt % 2 == 1 ? 1 : -1); }

Real perturbation_unit(const PrecisionContext& ctx) {
  return mp::exp2i(-ctx.mantissa_bits() / 4, coord_bits(ctx));
}

struct Box {
  Real s0, s1, t0, t1;
  long w;
};

double box_diameter(const Box& b) { return std::hypot((b.s1 - b.s0).to_double(), (b.t1 - b.t0).to_double()); }

bool box_contains(const Box& b, const Complex& z) {
  return z.re >= b.s0 && z.re <= b.s1 && z.im >= b.t0 && z.im <= b.t1;
}

struct NewtonResult {
  bool ok = false;
  Complex z{53};
  Real residual{53};
};

NewtonResult newton(const PrecisionContext& ctx, Target target, Complex z, const Box& box) {
  const int k = order_of(target);
  const double diam = box_diameter(box);
  const Complex center(Real((box.s0 + box.s1) / 2L, ctx.bits()), Real((box.t0 + box.t1) / 2L, ctx.bits()));
  const long stop_exp = -(ctx.mantissa_bits() - 2 * ctx.guard_bits());
  NewtonResult out;
  for (int it = 0; it < 80; ++it) {
    const ZetaJet jet = zeta_jet(ctx, z, k + 1);
    const Complex& f = jet.d[static_cast<std::size_t>(k)];
    const Complex& fp = jet.d[static_cast<std::size_t>(k) + 1];
    if (f.is_zero()) {
      out = {true, z, Real(ctx.bits())};
      break;
    }
    if (fp.is_zero()) return out;
    const Complex step = f / fp;
    z -= step;
    if (mp::abs(z - center).to_double() > 2 * diam) return out;
    const Real scale = mp::max(mp::abs(z), Real(1L, ctx.bits()));
    if (mp::abs(step) < scale * mp::exp2i(stop_exp, ctx.bits())) {
      const ZetaJet fin = zeta_jet(ctx, z, k + 1);
      const Real r = mp::abs(fin.d[static_cast<std::size_t>(k)]);
      const Real lim = mp::max(mp::abs(fin.d[static_cast<std::size_t>(k) + 1]), Real(1L, ctx.bits())) * ctx.newton_tol();
      if (!(r < lim)) return out;
      out = {true, z, r};
      break;
    }
  }
  if (!out.ok || !box_contains(box, out.z)) return {};
  out.z.round_to(ctx.bits());
  return out;
}

// Splits `box` (winding w != 0) until every zero is isolated and polished.
void isolate(Sampler& sp, const Box& box, std::vector<Zero>& out) {
  if (box.w == 0) return;
  const PrecisionContext& ctx = sp.ctx();
  const double diam = box_diameter(box);
  if (box.w == 1 && diam <= sp.options().newton_box) {
    const Complex center(Real((box.s0 + box.s1) / 2L, ctx.bits()), Real((box.t0 + box.t1) / 2L, ctx.bits()));
    NewtonResult r = newton(ctx, sp.target(), center, box);
    if (r.ok) {
      out.push_back(Zero{std::move(r.z), 1, std::move(r.residual), sp.target()});
      return;
    }
  }
  const double floor = std::ldexp(1.0, -static_cast<int>(ctx.mantissa_bits() / 8));
  if (diam < floor) {
    Complex center(Real((box.s0 + box.s1) / 2L, ctx.bits()), Real((box.t0 + box.t1) / 2L, ctx.bits()));
    const ZetaJet jet = zeta_jet(ctx, center, order_of(sp.target()));
    Real res = mp::abs(jet.d.back());
    out.push_back(Zero{std::move(center), static_cast<int>(box.w), std::move(res), sp.target()});
    return;
  }
  if (box.w < 0) throw DomainError("rectangle contains a pole of the target");
  // Quadrisect; if a cut line runs through a zero, slide both cuts a little.
  const mpfr_prec_t cb = sp.coord_bits();
  for (int attempt = 0; attempt <= kPerturbations; ++attempt) {
    Real sm = (box.s0 + box.s1);
    sm.ldexp(-1);
    Real tm = (box.t0 + box.t1);
    tm.ldexp(-1);
    if (attempt > 0) {
      Real ds = box.s1 - box.s0;
      ds.ldexp(-5);
      Real dt = box.t1 - box.t0;
      dt.ldexp(-5);
      sm += ds * static_cast<long>(schedule(attempt));
      tm += dt * static_cast<long>(schedule(attempt));
    }
    sm.round_to(cb);
    tm.round_to(cb);
    Box kids[4] = {{box.s0, sm, box.t0, tm, 0}, {sm, box.s1, box.t0, tm, 0},
                   {box.s0, sm, tm, box.t1, 0}, {sm, box.s1, tm, box.t1, 0}};
    long sum = 0;
    try {
      for (auto& kid : kids) {
        kid.w = sp.winding(kid.s0, kid.s1, kid.t0, kid.t1);
        sum += kid.w;
      }
    } catch (const EdgeTrouble&) {
      continue;
    }
    if (sum != box.w) {
      throw NonConvergence("winding additivity failed inside " +
                           Rect(box.s0, box.s1, box.t0, box.t1).to_string());
    }
    for (const auto& kid : kids) isolate(sp, kid, out);
    return;
  }
  throw BoundaryZero("cannot place subdivision lines clear of zeros");
}

void sort_zeros(std::vector<Zero>& z) {
  std::sort(z.begin(), z.end(), [](const Zero& a, const Zero& b) {
    const int c = mpfr_cmp(a.position.im.raw(), b.position.im.raw());
    if (c != 0) return c < 0;
    return mpfr_cmp(a.position.re.raw(), b.position.re.raw()) < 0;
  });
}

struct Placed {
  Real s0, s1, t0, t1;
  long w = 0;
  int perturbations = 0;
};

// Winding of a rectangle, moving the requested edges outward/inward on boundary trouble.
Placed place_and_wind(Sampler& sp, const Rect& rect, bool only_top) {
  const mpfr_prec_t cb = sp.coord_bits();
  const Real eps = perturbation_unit(sp.ctx());
  for (int attempt = 0; attempt <= kPerturbations; ++attempt) {
    const Real d = eps * static_cast<long>(schedule(attempt));
    Placed p{Real(rect.sigma_min, cb), Real(rect.sigma_max, cb), Real(rect.t_min, cb), Real(rect.t_max, cb)};
    p.t1 += d;
    if (!only_top) {
      p.s0 -= d;
      p.s1 += d;
      p.t0 -= d;
    }
    try {
      p.w = sp.winding(p.s0, p.s1, p.t0, p.t1);
      p.perturbations = attempt;
      return p;
    } catch (const EdgeTrouble&) {
      continue;
    }
  }
  throw BoundaryZero("zero on the contour of " + rect.to_string() + " after " +
                     std::to_string(kPerturbations) + " perturbations");
}

}  // namespace

long winding_count(const PrecisionContext& ctx, Target target, const Rect& rect, const CensusOptions& opt) {
  rect.validate();
  Sampler sp(ctx, target, opt);
  return place_and_wind(sp, rect, false).w;
}

namespace {

std::vector<Zero> locate_single(const PrecisionContext& ctx, Target target, const Rect& rect,
                                const CensusOptions& opt) {
  Sampler sp(ctx, target, opt);
  Placed p = place_and_wind(sp, rect, false);
  std::vector<Zero> out;
  isolate(sp, Box{p.s0, p.s1, p.t0, p.t1, p.w}, out);
  return out;
}

}  // namespace

StripCensus strip_census(const PrecisionContext& ctx, Target target, const Real& sigma_min,
                         const Real& sigma_max, const Real& t_lo, const Real& t_hi,
                         const std::vector<Real>& must_break, const CensusOptions& opt) {
  Rect(sigma_min, sigma_max, t_lo, t_hi).validate();
  const mpfr_prec_t cb = coord_bits(ctx);
  // Break points: the ends, every value asked for, and a regular grid between them.
  std::vector<Real> breaks{Real(t_lo, cb), Real(t_hi, cb)};
  for (const auto& b : must_break) {
    if (b > t_lo && b < t_hi) breaks.emplace_back(b, cb);
  }
  std::sort(breaks.begin(), breaks.end(), [](const Real& a, const Real& b) { return a < b; });
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](const Real& a, const Real& b) { return a == b; }),
               breaks.end());
  std::vector<Real> all;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    all.push_back(breaks[i]);
    const double gap = (breaks[i + 1] - breaks[i]).to_double();
    const long pieces = static_cast<long>(std::ceil(gap / opt.strip_height - 1e-9));
    for (long j = 1; j < pieces; ++j) {
      Real b = (breaks[i + 1] - breaks[i]) * j / pieces + breaks[i];
      b.round_to(cb);
      all.push_back(std::move(b));
    }
  }
  all.push_back(breaks.back());

  // Make every horizontal line clean, sliding it by the perturbation schedule if needed.
  StripCensus out;
  out.perturbations.assign(all.size(), 0);
  const Real eps = perturbation_unit(ctx);
  const Real s0(sigma_min, cb), s1(sigma_max, cb);
  parallel_for(all.size(), opt.threads, [&](std::size_t i) {
    Sampler sp(ctx, target, opt);
    for (int attempt = 0; attempt <= kPerturbations; ++attempt) {
      Real t = all[i] + eps * static_cast<long>(schedule(attempt));
      try {
        sp.segment(Point{s0, t}, Point{s1, t});
        all[i] = std::move(t);
        out.perturbations[i] = attempt;
        return;
      } catch (const EdgeTrouble&) {
        continue;
      }
    }
    throw BoundaryZero("horizontal line t = " + mp::to_string(all[i], 15) + " runs through a zero");
  });

  const std::size_t strips = all.size() - 1;
  std::vector<long> winding(strips, 0);
  std::vector<std::vector<Zero>> found(strips);
  parallel_for(strips, opt.threads, [&](std::size_t i) {
    Sampler sp(ctx, target, opt);
    long w = 0;
    try {
      w = sp.winding(s0, s1, all[i], all[i + 1]);
    } catch (const EdgeTrouble&) {
      throw BoundaryZero("vertical census edge runs through a zero near t = " + mp::to_string(all[i], 10));
    }
    winding[i] = w;
    isolate(sp, Box{s0, s1, all[i], all[i + 1], w}, found[i]);
  });
  out.breaks = std::move(all);
  out.winding = std::move(winding);
  for (auto& f : found) {
    for (auto& z : f) out.zeros.push_back(std::move(z));
  }
  sort_zeros(out.zeros);
  return out;
}

std::vector<Zero> locate_zeros(const PrecisionContext& ctx, Target target, const Rect& rect,
                               const CensusOptions& opt) {
  rect.validate();
  if (target == Target::zeta) {
    const Complex one(1.0, 0.0, ctx.bits());
    if (rect.contains(one)) throw DomainError("locate_zeros: rectangle contains the pole s = 1");
  }
  const double height = (rect.t_max - rect.t_min).to_double();
  std::vector<Zero> out;
  if (height <= 1.5 * opt.strip_height) {
    out = locate_single(ctx, target, rect, opt);
  } else {
    out = strip_census(ctx, target, rect.sigma_min, rect.sigma_max, rect.t_min, rect.t_max, {}, opt).zeros;
  }
  sort_zeros(out);
  return out;
}

CountResult count_Nk(const PrecisionContext& ctx, int k, const Real& T, const CensusOptions& opt) {
  if (k != 0 && k != 2) throw DomainError("count_Nk supports k = 0 and k = 2");
  if (!(T >= kCensusTMin)) throw DomainError("count_Nk needs T >= 2");
  CountResult out;
  if (T <= kCensusTMin) {
    out.T_used = T;
    return out;
  }
  const mpfr_prec_t cb = coord_bits(ctx);
  Rect rect = k == 0 ? Rect(-1.0, 2.0, kCensusTMin, 0.0, cb) : Rect(kZeta2SigmaMin, kZeta2SigmaMax, kCensusTMin, 0.0, cb);
  rect.t_max = Real(T, cb);
  Sampler sp(ctx, k == 0 ? Target::zeta : Target::zeta2, opt);
  Placed p = place_and_wind(sp, rect, true);
  out.count = p.w;
  out.T_used = p.t1;
  out.perturbations = p.perturbations;
  return out;
}

Real sum_S2(const std::vector<Zero>& zeros, const Real& T, mpfr_prec_t bits) {
  Real sum(bits);
  for (const auto& z : zeros) {
    if (z.target != Target::zeta2) continue;
    if (z.position.im.sign() <= 0 || z.position.im > T) continue;
    sum += (z.position.re - 0.5) * static_cast<long>(z.multiplicity);
  }
  return sum;
}

Real sum_S2(const PrecisionContext& ctx, const Real& T, const CensusOptions& opt) {
  if (!(T > 2 * M_PI)) throw DomainError("sum_S2 needs T > 2 pi");
  const Rect rect(Real(kZeta2SigmaMin, ctx.bits()), Real(kZeta2SigmaMax, ctx.bits()), Real(kCensusTMin, ctx.bits()),
                  Real(T, ctx.bits()));
  return sum_S2(locate_zeros(ctx, Target::zeta2, rect, opt), T, ctx.bits());
}

namespace {

struct ArgSample {
  Real arg{53};
  double dlog = 0;  // |f'/f|
  bool tiny = false;
};

ArgSample arg_sample(const PrecisionContext& ctx, ArgTarget target, const Complex& s) {
  const ZetaJet jet = zeta_jet(ctx, s, target == ArgTarget::zeta ? 1 : 3);
  Complex f(ctx.bits());
  Complex dl(ctx.bits());
  const Real l2 = mp::ln2(ctx.bits());
  const long tiny_exp = -ctx.mantissa_bits() / 2;
  auto is_tiny = [&](const Complex& z) { return z.is_zero() || mp::abs(z).exponent2() <= tiny_exp; };
  ArgSample out;
  if (target == ArgTarget::zeta) {
    if (is_tiny(jet.d[0])) return ArgSample{Real(ctx.bits()), 0, true};
    f = jet.d[0];
    dl = jet.d[1] / jet.d[0];
  } else {
    if (is_tiny(jet.d[2])) return ArgSample{Real(ctx.bits()), 0, true};
    const Complex g = mp::exp(s * l2) * jet.d[2] / (l2 * l2);
    dl = jet.d[3] / jet.d[2] + l2;
    if (target == ArgTarget::G2) {
      f = g;
    } else {
      if (is_tiny(jet.d[0])) return ArgSample{Real(ctx.bits()), 0, true};
      f = g / jet.d[0];
      dl -= jet.d[1] / jet.d[0];
    }
  }
  out.arg = mp::arg(f);
  out.dlog = mp::abs(dl).to_double();
  return out;
}

}  // namespace

ArgTrace arg_continuous(const PrecisionContext& ctx, ArgTarget target, const Real& T, const Real& sigma_stop) {
  if (!(T >= 2.0)) throw DomainError("arg_continuous needs T >= 2");
  const mpfr_prec_t cb = coord_bits(ctx);
  const Real stop(sigma_stop, cb);
  Real sigma = mp::max(Real(40L, cb), stop + 10.0);
  const Real t(T, ctx.bits());
  auto at = [&](const Real& x) {
    ArgSample a = arg_sample(ctx, target, Complex(Real(x, ctx.bits()), t));
    if (a.tiny) throw BoundaryZero(std::string(to_string(target)) + " vanishes on the line t = " + mp::to_string(T, 15));
    return a;
  };
  ArgTrace out;
  ArgSample cur = at(sigma);
  Real arg = cur.arg;
  Real variation(ctx.bits());
  const Real two_pi = mp::pi(ctx.bits()) * 2L;
  out.samples.emplace_back(Real(sigma, ctx.bits()), arg);
  out.branch_consistent = mp::abs(arg) < 0.01;
  const double min_step = std::ldexp(1.0, -static_cast<int>(ctx.mantissa_bits() / 4));
  long budget = 1'000'000;
  while (sigma > stop) {
    double h = std::min(1.0, 0.5 / std::max(cur.dlog, 1e-300));
    for (;;) {
      if (--budget < 0) throw NonConvergence("arg_continuous step budget exhausted");
      Real next = sigma - h;
      if (next < stop) next = stop;
      next.round_to(cb);
      ArgSample nx = at(next);
      // Principal difference of the two sampled arguments, exact to working precision.
      Real d = nx.arg - cur.arg;
      const double k = std::round((d / two_pi).to_double());
      if (k != 0) d -= two_pi * k;
      if (std::fabs(d.to_double()) < M_PI / 4 && nx.dlog * h <= 1.0) {
        arg += d;
        variation += mp::abs(d);
        sigma = std::move(next);
        cur = std::move(nx);
        out.samples.emplace_back(Real(sigma, ctx.bits()), arg);
        break;
      }
      h /= 2;
      if (h < min_step) throw BoundaryZero("argument trace cannot resolve a zero near the line t = " + mp::to_string(T, 15));
    }
  }
  out.total_variation = std::move(variation);
  return out;
}

}  // namespace zeta2
