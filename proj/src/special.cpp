#include "zeta2/special.hpp"

#include "zeta2/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace zeta2 {

const Complex& require_finite(const Complex& z, const char* where) {
  if (!z.is_finite()) throw DomainError(std::string("non-finite value in ") + where);
  return z;
}

const Real& require_finite(const Real& x, const char* where) {
  if (!x.is_finite()) throw DomainError(std::string("non-finite value in ") + where);
  return x;
}

namespace {

// Tangent numbers T_1..T_n (Brent & Harvey), exact.
std::vector<mpz_class> tangent_numbers(std::size_t n) {
  std::vector<mpz_class> t(n + 1);
  if (n == 0) return t;
  t[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t j = k; j <= n; ++j) {
      t[j] = t[j - 1] * static_cast<unsigned long>(j - k) + t[j] * static_cast<unsigned long>(j - k + 2);
    }
  }
  return t;
}

struct BernoulliCache {
  std::mutex mutex;
  std::vector<mpq_class> exact;  // exact[k-1] = B_{2k}
  std::map<mpfr_prec_t, std::shared_ptr<const std::vector<Real>>> rounded;
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

void grow_exact(std::vector<mpq_class>& exact, std::size_t count) {
  if (exact.size() >= count) return;
  const auto t = tangent_numbers(count);
  exact.clear();
  exact.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    mpz_class two_2k = 1;
    two_2k <<= static_cast<mp_bitcnt_t>(2 * k);
    mpq_class b(t[k] * static_cast<unsigned long>(2 * k), two_2k * (two_2k - 1));
    b.canonicalize();
    if (k % 2 == 0) b = -b;
    exact.push_back(b);
  }
}

}  // namespace

std::shared_ptr<const std::vector<Real>> bernoulli_table(mpfr_prec_t bits, std::size_t count) {
  auto& cache = bernoulli_cache();
  std::lock_guard lock(cache.mutex);
  auto it = cache.rounded.find(bits);
  if (it != cache.rounded.end() && it->second->size() >= count) return it->second;
  // Grow in generous blocks so hot loops rarely come back here.
  const std::size_t want = std::max<std::size_t>(count + count / 2, 64);
  grow_exact(cache.exact, want);
  auto table = std::make_shared<std::vector<Real>>();
  table->reserve(want);
  for (std::size_t k = 0; k < want; ++k) {
    Real r(bits);
    mpfr_set_q(r.raw(), cache.exact[k].get_mpq_t(), MPFR_RNDN);
    table->push_back(std::move(r));
  }
  std::shared_ptr<const std::vector<Real>> published = std::move(table);
  cache.rounded[bits] = published;
  return published;
}

bool near_nonpositive_integer(const Complex& s, double tol) {
  if (std::fabs(s.im.to_double()) >= tol) return false;
  const Real n = mp::round(s.re);
  if (n > 0.0) return false;
  return mp::abs(s.re - n) < tol;
}

Complex log_principal(const PrecisionContext& ctx, const Complex& s) {
  Complex z(s, ctx.bits());
  if (mp::abs(z) < ctx.newton_tol()) throw ZeroArgument("log of (near) zero argument");
  return require_finite(mp::log_unchecked(z), "log_principal");
}

namespace {

enum class StirlingKind { LogGamma, Digamma, Trigamma };

struct Shifted {
  Complex z;           // s + n with Re z >= threshold
  long shift = 0;      // n
};

long working_bits(const PrecisionContext& ctx, const Complex& s) {
  const double mag = std::max(1.0, mp::magnitude_hint(s));
  const long wb = ctx.mantissa_bits() + ctx.guard_bits() + 16 + static_cast<long>(std::ceil(std::log2(1.0 + mag)));
  return (wb + 31) / 32 * 32;  // few distinct widths keep the Bernoulli cache small
}

Shifted shift_right(const PrecisionContext& ctx, const Complex& s, long wb) {
  const double threshold = std::max(10.0, static_cast<double>(ctx.mantissa_bits()) / 8.0);
  Shifted out{Complex(s, wb), 0};
  const double re = s.re.to_double();
  if (re < threshold) {
    out.shift = static_cast<long>(std::ceil(threshold - re));
    out.z += static_cast<double>(out.shift);
  }
  return out;
}

// Asymptotic tail of log Gamma, psi or psi' at z (Re z large).
Complex stirling_series(const Complex& z, StirlingKind kind, long wb, long required_exp2) {
  const auto bits = static_cast<mpfr_prec_t>(wb);
  Complex w = mp::reciprocal(z);
  Complex w2 = mp::sqr(w);
  Complex sum(bits);
  // term_m = B_2m * c_m * w^{p(m)} with
  //   log Gamma: c = 1/(2m(2m-1)), p = 2m-1
  //   psi:       c = -1/(2m),      p = 2m
  //   psi':      c = 1,            p = 2m+1
  Complex power = kind == StirlingKind::LogGamma ? w : (kind == StirlingKind::Digamma ? w2 : w2 * w);
  const long target = -wb;
  std::size_t table_size = 64;
  auto bern = bernoulli_table(bits, table_size);
  long prev_e = LONG_MAX;
  for (std::size_t m = 1;; ++m) {
    if (m > bern->size()) {
      table_size = 2 * m;
      bern = bernoulli_table(bits, table_size);
    }
    Complex term = power * (*bern)[m - 1];
    const long mm = static_cast<long>(m);
    switch (kind) {
      case StirlingKind::LogGamma: term /= Real(2 * mm * (2 * mm - 1), bits); break;
      case StirlingKind::Digamma: term /= Real(-2 * mm, bits); break;
      case StirlingKind::Trigamma: break;
    }
    const long e = std::max(term.re.exponent2(), term.im.exponent2());
    const long scale = std::max({sum.re.exponent2(), sum.im.exponent2(), 0L});
    if (e > prev_e) {
      // Past the smallest term of the asymptotic series; stop there if it is good enough.
      if (prev_e < scale + required_exp2) break;
      throw PrecisionError("Stirling series diverged before reaching the target accuracy");
    }
    sum += term;
    if (e < scale + target || m > 4000) break;
    prev_e = e;
    power *= w2;
  }
  return sum;
}

void check_pole(const PrecisionContext& ctx, const Complex& s, const char* fn) {
  if (near_nonpositive_integer(s, ctx.newton_tol())) {
    throw PoleError(std::string(fn) + " has a pole at " + mp::to_string(s, 10));
  }
}

}  // namespace

Complex log_gamma(const PrecisionContext& ctx, const Complex& s) {
  check_pole(ctx, s, "log_gamma");
  const long wb = working_bits(ctx, s);
  Shifted sh = shift_right(ctx, s, wb);
  const auto bits = static_cast<mpfr_prec_t>(wb);
  // (z - 1/2) log z - z + log(2 pi)/2 + series
  Complex lz = mp::log_unchecked(sh.z);
  Complex result = (sh.z - 0.5) * lz - sh.z;
  Real half_log_2pi = mp::log(mp::pi(bits) * 2L);
  half_log_2pi.ldexp(-1);
  result += half_log_2pi;
  result += stirling_series(sh.z, StirlingKind::LogGamma, wb, ctx.kernel_tol_exp2() - 4);
  Complex zk(s, bits);
  for (long k = 0; k < sh.shift; ++k) {
    result -= mp::log_unchecked(zk);
    zk += 1.0;
  }
  result.round_to(ctx.bits());
  return require_finite(result, "log_gamma");
}

Complex gamma(const PrecisionContext& ctx, const Complex& s) {
  check_pole(ctx, s, "gamma");
  const long wb = working_bits(ctx, s);
  Shifted sh = shift_right(ctx, s, wb);
  const auto bits = static_cast<mpfr_prec_t>(wb);
  Complex lz = mp::log_unchecked(sh.z);
  Complex lg = (sh.z - 0.5) * lz - sh.z;
  Real half_log_2pi = mp::log(mp::pi(bits) * 2L);
  half_log_2pi.ldexp(-1);
  lg += half_log_2pi;
  lg += stirling_series(sh.z, StirlingKind::LogGamma, wb, ctx.kernel_tol_exp2() - 4);
  Complex result = mp::exp(lg);
  if (sh.shift > 0) {
    Complex product(1.0, 0.0, bits);
    Complex zk(s, bits);
    for (long k = 0; k < sh.shift; ++k) {
      product *= zk;
      zk += 1.0;
    }
    result /= product;
  }
  result.round_to(ctx.bits());
  return require_finite(result, "gamma");
}

Complex digamma(const PrecisionContext& ctx, const Complex& s) {
  check_pole(ctx, s, "digamma");
  const long wb = working_bits(ctx, s);
  Shifted sh = shift_right(ctx, s, wb);
  const auto bits = static_cast<mpfr_prec_t>(wb);
  Complex result = mp::log_unchecked(sh.z) - mp::reciprocal(sh.z) * 0.5;
  result += stirling_series(sh.z, StirlingKind::Digamma, wb, ctx.kernel_tol_exp2() - 4);
  Complex zk(s, bits);
  for (long k = 0; k < sh.shift; ++k) {
    result -= mp::reciprocal(zk);
    zk += 1.0;
  }
  result.round_to(ctx.bits());
  return require_finite(result, "digamma");
}

Complex trigamma(const PrecisionContext& ctx, const Complex& s) {
  check_pole(ctx, s, "trigamma");
  const long wb = working_bits(ctx, s);
  Shifted sh = shift_right(ctx, s, wb);
  const auto bits = static_cast<mpfr_prec_t>(wb);
  Complex w = mp::reciprocal(sh.z);
  Complex result = w + mp::sqr(w) * 0.5;
  result += stirling_series(sh.z, StirlingKind::Trigamma, wb, ctx.kernel_tol_exp2() - 4);
  Complex zk(s, bits);
  for (long k = 0; k < sh.shift; ++k) {
    result += mp::sqr(mp::reciprocal(zk));
    zk += 1.0;
  }
  result.round_to(ctx.bits());
  return require_finite(result, "trigamma");
}

}  // namespace zeta2
