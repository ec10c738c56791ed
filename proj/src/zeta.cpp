#include "zeta2/zeta.hpp"

#include "zeta2/error.hpp"
#include "zeta2/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace zeta2 {

DerivOrder::DerivOrder(int k) : k_(k) {
  if (k < 0) throw DomainError("derivative order must be non-negative");
}

const char* to_string(RatioKind kind) noexcept {
  switch (kind) {
    case RatioKind::zp_over_z: return "zp_over_z";
    case RatioKind::zpp_over_zp: return "zpp_over_zp";
    case RatioKind::zpp_over_z: return "zpp_over_z";
  }
  return "?";
}

namespace {

// Smallest-prime-factor sieve, grown on demand and published immutably.
struct Sieve {
  std::vector<std::uint32_t> spf;
};

// log n for n < size at one precision; entries never change once published.
struct LogTable {
  std::vector<Real> log;
};

struct Tables {
  std::mutex mutex;
  std::shared_ptr<const Sieve> sieve;
  std::map<mpfr_prec_t, std::shared_ptr<const LogTable>> logs;
};

Tables& tables() {
  static Tables t;
  return t;
}

std::shared_ptr<const Sieve> build_sieve(std::size_t n) {
  auto s = std::make_shared<Sieve>();
  s->spf.assign(n + 1, 0);
  for (std::size_t i = 2; i <= n; ++i) {
    if (s->spf[i] != 0) continue;
    for (std::size_t j = i; j <= n; j += i) {
      if (s->spf[j] == 0) s->spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return s;
}

std::shared_ptr<const Sieve> sieve_upto(std::size_t n) {
  auto& t = tables();
  std::lock_guard lock(t.mutex);
  if (!t.sieve || t.sieve->spf.size() <= n) t.sieve = build_sieve(std::max<std::size_t>(2 * n, 4096));
  return t.sieve;
}

std::shared_ptr<const LogTable> logs_upto(std::size_t n, mpfr_prec_t bits) {
  auto sieve = sieve_upto(n);
  auto& t = tables();
  std::lock_guard lock(t.mutex);
  auto& slot = t.logs[bits];
  if (slot && slot->log.size() > n) return slot;
  const std::size_t size = std::min(sieve->spf.size(), std::max<std::size_t>(2 * n, 4096));
  auto table = std::make_shared<LogTable>();
  table->log.reserve(size);
  const std::size_t have = slot ? slot->log.size() : 0;
  for (std::size_t k = 0; k < size; ++k) {
    if (k < have) {
      table->log.push_back(slot->log[k]);
      continue;
    }
    Real r(bits);
    if (k >= 2) {
      const std::uint32_t p = sieve->spf[k];
      if (p == k) mpfr_log_ui(r.raw(), k, MPFR_RNDN);
      else mpfr_add(r.raw(), table->log[p].raw(), table->log[k / p].raw(), MPFR_RNDN);
    }
    table->log.push_back(std::move(r));
  }
  slot = std::move(table);
  return slot;
}

// Per-thread scratch for n^-s so the hot loop does not allocate.
struct Workspace {
  std::vector<Complex> pw;
  mpfr_prec_t bits = 0;

  void prepare(std::size_t n, mpfr_prec_t b) {
    if (b != bits) {
      pw.clear();
      bits = b;
    }
    while (pw.size() <= n) pw.emplace_back(b);
  }
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

// Truncated power series in epsilon: c[0] + c[1] e + ... + c[K] e^K.
using Jet = std::vector<Complex>;

// j <- j * (a + e), in place, truncated.
void mul_linear(Jet& j, const Complex& a, Real& scratch, Complex& tmp) {
  for (std::size_t i = j.size(); i-- > 0;) {
    mul_into(tmp, j[i], a, scratch);
    if (i > 0) tmp += j[i - 1];
    std::swap(j[i], tmp);
  }
}

Jet mul_jets(const Jet& a, const Jet& b) {
  const std::size_t K = a.size();
  Jet out(K, Complex(a[0].bits()));
  Real scratch(a[0].bits());
  Complex tmp(a[0].bits());
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; i + j < K; ++j) {
      mul_into(tmp, a[i], b[j], scratch);
      out[i + j] += tmp;
    }
  }
  return out;
}

long initial_cut(const PrecisionContext& ctx, const Complex& s) {
  const double t = std::fabs(s.im.to_double());
  return std::max(20L, static_cast<long>(std::ceil(1.3 * t)) + ctx.mantissa_bits() / 4);
}

// Bits lost when the partial sum is much larger than the value (Re s < 1/2).
long cancellation_bits(const Complex& s, long N, int order) {
  const double sigma = s.re.to_double();
  if (sigma >= 0.5) return 0;
  const double l2N = std::log2(static_cast<double>(N));
  const double partial = (1.0 - sigma) * l2N - std::log2(1.0 - sigma) + order * std::log2(1.0 + std::log(N));
  const double r = std::max(std::hypot(1.0 - sigma, s.im.to_double()), 2 * M_PI) / (2 * M_PI);
  const double value = (0.5 - sigma) * std::log2(r) - 1.0;
  return std::max(0L, static_cast<long>(std::ceil(partial - value)));
}

struct Attempt {
  bool ok = false;
  Jet c;  // Taylor coefficients zeta^(j)(s)/j!
};

Attempt em_attempt(const PrecisionContext& ctx, const Complex& s_in, int K, long N) {
  const long extra = cancellation_bits(s_in, N, K);
  long wb = ctx.mantissa_bits() + ctx.guard_bits() + 16 + extra +
            static_cast<long>(std::ceil(std::log2(static_cast<double>(N))));
  wb = (wb + 31) / 32 * 32;
  const auto bits = static_cast<mpfr_prec_t>(wb);
  const Complex s(s_in, bits);
  const double sigma = s.re.to_double();

  auto logs = logs_upto(static_cast<std::size_t>(N), bits);
  auto sieve = sieve_upto(static_cast<std::size_t>(N));
  const auto& L = logs->log;
  const auto& spf = sieve->spf;

  // n^-s for n < N by multiplicativity: only primes pay for exp and sin_cos.
  Workspace& ws = workspace();
  ws.prepare(static_cast<std::size_t>(N), bits);
  auto& pw = ws.pw;
  Real scratch(bits), mag(bits), ang(bits);
  mpfr_set_ui(pw[1].re.raw(), 1, MPFR_RNDN);
  mpfr_set_zero(pw[1].im.raw(), 1);
  for (long n = 2; n < N; ++n) {
    const std::uint32_t p = spf[static_cast<std::size_t>(n)];
    if (p == static_cast<std::uint32_t>(n)) {
      mpfr_mul(mag.raw(), s.re.raw(), L[n].raw(), MPFR_RNDN);
      mpfr_neg(mag.raw(), mag.raw(), MPFR_RNDN);
      mpfr_exp(mag.raw(), mag.raw(), MPFR_RNDN);
      mpfr_mul(ang.raw(), s.im.raw(), L[n].raw(), MPFR_RNDN);
      mpfr_sin_cos(pw[n].im.raw(), pw[n].re.raw(), ang.raw(), MPFR_RNDN);
      mpfr_mul(pw[n].re.raw(), pw[n].re.raw(), mag.raw(), MPFR_RNDN);
      mpfr_mul(pw[n].im.raw(), pw[n].im.raw(), mag.raw(), MPFR_RNDN);
      mpfr_neg(pw[n].im.raw(), pw[n].im.raw(), MPFR_RNDN);
    } else {
      mul_into(pw[n], pw[p], pw[n / p], scratch);
    }
  }

  // Partial sums S_j = sum n^-s (-log n)^j, divided by j! afterwards.
  Jet S(static_cast<std::size_t>(K) + 1, Complex(bits));
  std::vector<double> scale(static_cast<std::size_t>(K) + 1, 0.0);
  Complex v(bits);
  for (long n = 1; n < N; ++n) {
    S[0] += pw[n];
    const double ln = std::log(static_cast<double>(n));
    double w = std::exp(-sigma * ln);
    scale[0] += w;
    if (K == 0 || n == 1) continue;
    mpfr_set(v.re.raw(), pw[n].re.raw(), MPFR_RNDN);
    mpfr_set(v.im.raw(), pw[n].im.raw(), MPFR_RNDN);
    for (int j = 1; j <= K; ++j) {
      mpfr_mul(v.re.raw(), v.re.raw(), L[n].raw(), MPFR_RNDN);
      mpfr_mul(v.im.raw(), v.im.raw(), L[n].raw(), MPFR_RNDN);
      mpfr_neg(v.re.raw(), v.re.raw(), MPFR_RNDN);
      mpfr_neg(v.im.raw(), v.im.raw(), MPFR_RNDN);
      S[j] += v;
      w *= ln / j;
      scale[j] += w;
    }
  }
  Real fact(1L, bits);
  for (int j = 2; j <= K; ++j) {
    fact *= static_cast<long>(j);
    S[j] /= fact;
  }

  // Tail: N^-(s+e) * [ N/(s-1+e) + 1/2 + sum_m B_2m/(2m)! N^(1-2m) (s+e)_(2m-1) ].
  const Real logN = mp::log(Real(N, bits));
  Jet E(static_cast<std::size_t>(K) + 1, Complex(bits));
  E[0] = mp::exp(Complex(-(s.re * logN), -(s.im * logN)));
  for (int j = 1; j <= K; ++j) E[j] = E[j - 1] * (-logN) / static_cast<long>(j);

  Jet D(static_cast<std::size_t>(K) + 1, Complex(bits));
  const Complex a = s - 1.0;
  const Complex ainv = mp::reciprocal(a);
  Complex p = ainv * N;
  for (int j = 0; j <= K; ++j) {
    D[j] = p;
    p *= ainv;
    p = -p;
  }
  D[0] += 0.5;

  double tol_exp = 1e300;
  for (int j = 0; j <= K; ++j) {
    if (scale[j] > 0) tol_exp = std::min(tol_exp, std::log2(scale[j]));
  }
  tol_exp -= static_cast<double>(ctx.mantissa_bits() + ctx.guard_bits() + extra);
  const double logN_d = std::log(static_cast<double>(N));
  const double head_exp = -sigma * std::log2(static_cast<double>(N)) + K * std::log2(1.0 + logN_d);

  std::size_t table = 64;
  auto bern = bernoulli_table(bits, table);
  Jet P(static_cast<std::size_t>(K) + 1, Complex(bits));  // (s+e)_(2m-1)
  P[0] = s;
  if (K >= 1) P[1] = Complex(1.0, 0.0, bits);
  Real g = 1.0 / Real(2L * N, bits);  // N^(1-2m)/(2m)!
  const Real N2(static_cast<double>(N) * static_cast<double>(N), bits);
  Complex tmp(bits), shift(bits);
  double prev = 1e300;
  bool converged = false;
  const long max_terms = 4 * wb;
  for (long m = 1; m <= max_terms; ++m) {
    if (static_cast<std::size_t>(m) > bern->size()) {
      table *= 2;
      bern = bernoulli_table(bits, table);
    }
    Real coef = (*bern)[m - 1] * g;
    double term_exp = -1e300;
    for (int j = 0; j <= K; ++j) {
      tmp = P[j] * coef;
      D[j] += tmp;
      term_exp = std::max(term_exp, static_cast<double>(std::max(tmp.re.exponent2(), tmp.im.exponent2())));
    }
    // Remainder after m terms is bounded by the next term times |s+2m+1|/(sigma+2m+1).
    const double sig_m = sigma + 2.0 * m + 1.0;
    double amp = 0.0;
    if (sig_m > 0.5) {
      amp = std::log2(std::max(1.0, std::hypot(sigma + 2.0 * m + 1.0, s.im.to_double()) / sig_m));
    } else {
      amp = 1e9;  // bound unavailable yet; keep going
    }
    if (term_exp + head_exp + amp < tol_exp - 2) {
      converged = true;
      break;
    }
    if (term_exp > prev && sig_m > 0.5) break;  // asymptotic series turned; need a larger N
    prev = term_exp;
    // P <- P (s + 2m - 1 + e)(s + 2m + e); g <- g / ((2m+1)(2m+2) N^2)
    shift = s + static_cast<double>(2 * m - 1);
    mul_linear(P, shift, scratch, tmp);
    shift += 1.0;
    mul_linear(P, shift, scratch, tmp);
    g /= N2;
    g /= static_cast<long>((2 * m + 1) * (2 * m + 2));
  }
  Attempt out;
  if (!converged) return out;
  Jet tail = mul_jets(E, D);
  out.c.reserve(static_cast<std::size_t>(K) + 1);
  for (int j = 0; j <= K; ++j) out.c.push_back(S[j] + tail[j]);
  out.ok = true;
  return out;
}

}  // namespace

ZetaJet zeta_jet(const PrecisionContext& ctx, const Complex& s, int order) {
  if (order < 0) throw DomainError("negative derivative order");
  require_finite(s, "zeta_jet");
  {
    const Complex a = s - 1.0;
    if (mp::abs(a) < ctx.newton_tol()) throw PoleError("zeta has a pole at s = 1");
  }
  long N = initial_cut(ctx, s);
  while (N <= kMaxEulerMaclaurinCut) {
    Attempt at = em_attempt(ctx, s, order, N);
    if (at.ok) {
      ZetaJet out;
      out.cut = N;
      Real fact(1L, ctx.bits());
      for (int j = 0; j <= order; ++j) {
        if (j >= 2) fact *= static_cast<long>(j);
        Complex d = at.c[static_cast<std::size_t>(j)] * fact;
        d.round_to(ctx.bits());
        out.d.push_back(require_finite(d, "zeta_jet"));
      }
      return out;
    }
    N = N + N / 2;
  }
  throw PrecisionError("Euler-Maclaurin remainder bound not met below the maximum cut at s = " +
                       mp::to_string(s, 12));
}

Complex zeta_deriv(const PrecisionContext& ctx, DerivOrder order, const Complex& s) {
  if (!order.full_plane() && !(s.re > 1.5)) {
    throw DomainError("derivative order " + std::to_string(order.value()) +
                      " is only available for Re s > 1.5");
  }
  return std::move(zeta_jet(ctx, s, order.value()).d.back());
}

Real von_mangoldt(const PrecisionContext& ctx, std::uint64_t n) {
  if (n == 0) throw DomainError("von_mangoldt needs n >= 1");
  Real out(ctx.bits());
  if (n == 1) return out;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = n;
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  if (m == 1) mpfr_log_ui(out.raw(), static_cast<unsigned long>(p), MPFR_RNDN);
  return out;
}

Complex ratio_from_jet(const PrecisionContext& ctx, RatioKind kind, const ZetaJet& jet) {
  if (jet.d.size() < 3) throw DomainError("ratio needs a jet of order 2");
  const Complex* num = nullptr;
  const Complex* den = nullptr;
  const Complex* dden = nullptr;
  switch (kind) {
    case RatioKind::zp_over_z: num = &jet.d[1]; den = &jet.d[0]; dden = &jet.d[1]; break;
    case RatioKind::zpp_over_zp: num = &jet.d[2]; den = &jet.d[1]; dden = &jet.d[2]; break;
    case RatioKind::zpp_over_z: num = &jet.d[2]; den = &jet.d[0]; dden = &jet.d[1]; break;
  }
  // A zero of the denominator within newton_tol of s shows up as |den| < tol |den'|.
  const Real ad = mp::abs(*den);
  if (ad.is_zero() || ad < mp::abs(*dden) * ctx.newton_tol()) {
    throw DenominatorZero(std::string(to_string(kind)) + ": denominator vanishes near s");
  }
  return require_finite(*num / *den, "log_deriv_ratio");
}

namespace {

// Dirichlet-series cut meeting the target, or 0 when it would exceed `cap`.
long series_cut(const PrecisionContext& ctx, double sigma, long cap) {
  if (sigma <= 1.5) return 0;
  const double target = -static_cast<double>(ctx.mantissa_bits() + ctx.guard_bits()) - sigma - 2.0;
  const double s1 = sigma - 1.0;
  for (long N = 64; N <= cap; N *= 2) {
    const double l = std::log(static_cast<double>(N));
    // sum_{n>N} (log n)^2 n^-sigma <= N^(1-sigma)/(sigma-1) (l^2 + 2l/(s-1) + 2/(s-1)^2)
    const double bound = (1.0 - sigma) * std::log2(static_cast<double>(N)) - std::log2(s1) +
                         std::log2(l * l + 2 * l / s1 + 2 / (s1 * s1)) + 1.0;
    if (bound < target) return N;
  }
  return 0;
}

}  // namespace

Complex log_deriv_ratio(const PrecisionContext& ctx, RatioKind kind, const Complex& s) {
  require_finite(s, "log_deriv_ratio");
  if (mp::abs(s - 1.0) < ctx.newton_tol()) throw PoleError("zeta has a pole at s = 1");
  const long N = series_cut(ctx, s.re.to_double(), 4096);
  if (N == 0) return ratio_from_jet(ctx, kind, zeta_jet(ctx, s, 2));

  // A = sum Lambda(n) n^-s = -zeta'/zeta, B = sum Lambda(n) log n n^-s = (zeta'/zeta)'.
  const auto bits = static_cast<mpfr_prec_t>(ctx.mantissa_bits() + ctx.guard_bits() + 32);
  const Complex z(s, bits);
  auto sieve = sieve_upto(static_cast<std::size_t>(N));
  Complex A(bits), B(bits), term(bits);
  Real lp(bits), ln(bits);
  for (long n = 2; n <= N; ++n) {
    const auto p = static_cast<long>(sieve->spf[static_cast<std::size_t>(n)]);
    long m = n;
    while (m % p == 0) m /= p;
    if (m != 1) continue;
    mpfr_log_ui(lp.raw(), static_cast<unsigned long>(p), MPFR_RNDN);
    mpfr_log_ui(ln.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    term = mp::exp(Complex(-(z.re * ln), -(z.im * ln))) * lp;
    A += term;
    B += term * ln;
  }
  Complex out(bits);
  switch (kind) {
    case RatioKind::zp_over_z: out = -A; break;
    case RatioKind::zpp_over_z: out = B + mp::sqr(A); break;
    case RatioKind::zpp_over_zp: out = -(B + mp::sqr(A)) / A; break;
  }
  out.round_to(ctx.bits());
  return require_finite(out, "log_deriv_ratio");
}

}  // namespace zeta2
