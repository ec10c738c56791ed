#include "zeta2/real.hpp"

#include "zeta2/error.hpp"

#include <climits>
#include <cstdlib>
#include <ostream>

namespace zeta2::mp {

Real::Real(const std::string& text, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  char* end = nullptr;
  if (!text.empty()) mpfr_strtofr(v_, text.c_str(), &end, 10, MPFR_RNDN);
  if (end == nullptr || *end != '\0' || end == text.c_str()) {
    mpfr_clear(v_);
    throw DomainError("malformed real literal '" + text + "'");
  }
}

long Real::exponent2() const noexcept {
  if (mpfr_zero_p(v_) || !mpfr_number_p(v_)) return LONG_MIN / 2;
  return static_cast<long>(mpfr_get_exp(v_));
}

namespace {

template <class F>
Real unary(const Real& x, F f) {
  Real r(x.bits());
  f(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }

Real floor(const Real& x) {
  Real r(x.bits());
  mpfr_floor(r.raw(), x.raw());
  return r;
}

Real round(const Real& x) {
  Real r(x.bits());
  mpfr_round(r.raw(), x.raw());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(max_bits(x, y));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(max_bits(x, y));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(max_bits(x, y));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.bits());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real ln2(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

Real euler_gamma(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

Real exp2i(long e, mpfr_prec_t bits) {
  Real r(1L, bits);
  r.ldexp(e);
  return r;
}

std::string to_string(const Real& x, int digits) {
  if (x.is_zero()) return "0";
  if (!x.is_finite()) return mpfr_nan_p(x.raw()) ? "nan" : (x.sign() > 0 ? "inf" : "-inf");
  char* out = nullptr;
  const std::string fmt = "%." + std::to_string(digits) + "Rg";
  if (mpfr_asprintf(&out, fmt.c_str(), x.raw()) < 0 || out == nullptr) return "nan";
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << to_string(x); }

}  // namespace zeta2::mp
