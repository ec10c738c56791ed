#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace zeta2::mp {

/// Owning RAII handle over an mpfr_t.
///
/// The precision is fixed at construction. Binary operators produce a result
/// at the larger precision of their operands; operands that are plain
/// doubles or integers adopt the precision of the Real they meet.
/// All operations round to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 53) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Real(double x, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(long x, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x, mpfr_prec_t bits) : Real(static_cast<long>(x), bits) {}
  /// Parses a decimal literal; throws DomainError on malformed text.
  Real(const std::string& text, mpfr_prec_t bits);
  /// Copy of `other` rounded to `bits`.
  Real(const Real& other, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set(v_, other.v_, MPFR_RNDN); }

  Real(const Real& other) { mpfr_init2(v_, mpfr_get_prec(other.v_)); mpfr_set(v_, other.v_, MPFR_RNDN); }
  Real(Real&& other) noexcept {
    *v_ = *other.v_;
    other.v_->_mpfr_d = nullptr;
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      if (v_->_mpfr_d == nullptr) mpfr_init2(v_, mpfr_get_prec(other.v_));
      else mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    std::swap(*v_, *other.v_);
    return *this;
  }
  ~Real() {
    if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }
  mpfr_ptr raw() noexcept { return v_; }
  mpfr_srcptr raw() const noexcept { return v_; }

  /// Rounds the stored value to a new precision in place.
  void round_to(mpfr_prec_t bits) { mpfr_prec_round(v_, bits, MPFR_RNDN); }
  /// Changes the precision, discarding the value.
  void reset(mpfr_prec_t bits) { mpfr_set_prec(v_, bits); mpfr_set_zero(v_, 1); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); a very negative value for zero.
  long exponent2() const noexcept;

  Real& operator+=(const Real& o) { add_to(o); return *this; }
  Real& operator-=(const Real& o) { sub_from(o); return *this; }
  Real& operator*=(const Real& o) { mul_by(o); return *this; }
  Real& operator/=(const Real& o) { div_by(o); return *this; }
  Real& operator+=(double o) { mpfr_add_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(double o) { mpfr_sub_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(int o) { return *this *= static_cast<long>(o); }
  Real& operator/=(int o) { return *this /= static_cast<long>(o); }

  /// Exact scaling by 2^e.
  Real& ldexp(long e) { mpfr_mul_2si(v_, v_, e, MPFR_RNDN); return *this; }

 private:
  void widen_to(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }
  void add_to(const Real& o) { widen_to(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); }
  void sub_from(const Real& o) { widen_to(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); }
  void mul_by(const Real& o) { widen_to(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); }
  void div_by(const Real& o) { widen_to(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); }

  mpfr_t v_;
};

inline mpfr_prec_t max_bits(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }

inline Real operator-(const Real& a) { Real r(a); mpfr_neg(r.raw(), r.raw(), MPFR_RNDN); return r; }
inline Real operator+(Real a, const Real& b) { a += b; return a; }
inline Real operator-(Real a, const Real& b) { a -= b; return a; }
inline Real operator*(Real a, const Real& b) { a *= b; return a; }
inline Real operator/(Real a, const Real& b) { a /= b; return a; }
inline Real operator+(Real a, double b) { a += b; return a; }
inline Real operator-(Real a, double b) { a -= b; return a; }
inline Real operator*(Real a, double b) { a *= b; return a; }
inline Real operator/(Real a, double b) { a /= b; return a; }
inline Real operator+(double a, Real b) { b += a; return b; }
inline Real operator*(double a, Real b) { b *= a; return b; }
inline Real operator-(double a, const Real& b) {
  Real r(b.bits()); mpfr_d_sub(r.raw(), a, b.raw(), MPFR_RNDN); return r;
}
inline Real operator/(double a, const Real& b) {
  Real r(b.bits()); mpfr_d_div(r.raw(), a, b.raw(), MPFR_RNDN); return r;
}
inline Real operator*(Real a, long b) { a *= b; return a; }
inline Real operator/(Real a, long b) { a /= b; return a; }
inline Real operator*(Real a, int b) { a *= b; return a; }
inline Real operator/(Real a, int b) { a /= b; return a; }

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
inline bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
inline bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
inline bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }

// Elementary functions. The result has the precision of the argument.
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real round(const Real& x);
Real hypot(const Real& x, const Real& y);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real pi(mpfr_prec_t bits);
Real ln2(mpfr_prec_t bits);
Real euler_gamma(mpfr_prec_t bits);

/// 2^e at the given precision.
Real exp2i(long e, mpfr_prec_t bits);

/// Decimal text with `digits` significant digits, trailing zeros stripped.
std::string to_string(const Real& x, int digits = 25);
std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace zeta2::mp
