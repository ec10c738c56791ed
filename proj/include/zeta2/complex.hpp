#pragma once

#include "zeta2/real.hpp"

#include <iosfwd>
#include <string>

namespace zeta2::mp {

/// Arbitrary-precision complex number. Both parts share one precision.
struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t bits = 53) : re(bits), im(bits) {}
  Complex(double x, double y, mpfr_prec_t bits) : re(x, bits), im(y, bits) {}
  Complex(Real x, Real y) : re(std::move(x)), im(std::move(y)) {
    if (re.bits() != im.bits()) {
      const auto b = max_bits(re, im);
      re.round_to(b);
      im.round_to(b);
    }
  }
  explicit Complex(Real x) : re(std::move(x)), im(re.bits()) {}
  Complex(const Complex& z, mpfr_prec_t bits) : re(z.re, bits), im(z.im, bits) {}

  mpfr_prec_t bits() const noexcept { return re.bits(); }
  bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }
  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  void round_to(mpfr_prec_t bits) { re.round_to(bits); im.round_to(bits); }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator+=(const Real& o) { re += o; if (o.bits() > im.bits()) im.round_to(o.bits()); return *this; }
  Complex& operator-=(const Real& o) { re -= o; if (o.bits() > im.bits()) im.round_to(o.bits()); return *this; }
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
  Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }
  Complex& operator+=(double o) { re += o; return *this; }
  Complex& operator-=(double o) { re -= o; return *this; }
  Complex& operator*=(double o) { re *= o; im *= o; return *this; }
  Complex& operator/=(double o) { re /= o; im /= o; return *this; }
  Complex& operator*=(long o) { re *= o; im *= o; return *this; }
  Complex& operator*=(int o) { re *= o; im *= o; return *this; }
  Complex& operator/=(long o) { re /= o; im /= o; return *this; }
  Complex& operator/=(int o) { re /= o; im /= o; return *this; }
  Complex& ldexp(long e) { re.ldexp(e); im.ldexp(e); return *this; }
};

inline Complex operator-(const Complex& z) { return Complex(-z.re, -z.im); }
inline Complex operator+(Complex a, const Complex& b) { a += b; return a; }
inline Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
inline Complex operator*(Complex a, const Complex& b) { a *= b; return a; }
inline Complex operator/(Complex a, const Complex& b) { a /= b; return a; }
inline Complex operator+(Complex a, const Real& b) { a += b; return a; }
inline Complex operator-(Complex a, const Real& b) { a -= b; return a; }
inline Complex operator*(Complex a, const Real& b) { a *= b; return a; }
inline Complex operator/(Complex a, const Real& b) { a /= b; return a; }
inline Complex operator*(const Real& b, Complex a) { a *= b; return a; }
inline Complex operator+(Complex a, double b) { a += b; return a; }
inline Complex operator-(Complex a, double b) { a -= b; return a; }
inline Complex operator*(Complex a, double b) { a *= b; return a; }
inline Complex operator/(Complex a, double b) { a /= b; return a; }
inline Complex operator*(double b, Complex a) { a *= b; return a; }
inline Complex operator+(double b, Complex a) { a += b; return a; }
inline Complex operator*(Complex a, long b) { a *= b; return a; }
inline Complex operator*(Complex a, int b) { a *= b; return a; }
Complex operator-(double a, const Complex& b);
Complex operator/(double a, const Complex& b);

/// In-place kernels used by hot loops; `out` must not alias the inputs.
void mul_into(Complex& out, const Complex& a, const Complex& b, Real& scratch);
/// out += a * x for real x. `scratch` is overwritten.
void add_scaled_into(Complex& out, const Complex& a, const Real& x, Real& scratch);

Complex conj(const Complex& z);
/// |z|^2.
Real norm(const Complex& z);
Real abs(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
Complex sqr(const Complex& z);
Complex reciprocal(const Complex& z);
Complex exp(const Complex& z);
/// Principal logarithm without error checks (log 0 is -inf + i0).
Complex log_unchecked(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
/// cot z, evaluated through exp(2iz) so it stays accurate for large |Im z|.
Complex cot(const Complex& z);
/// base^z for a positive real base.
Complex pow(const Real& base, const Complex& z);
/// z^n for integer n by repeated squaring.
Complex pow(const Complex& z, long n);

/// Max of |re|, |im| as a double; a cheap magnitude for step control.
double magnitude_hint(const Complex& z) noexcept;

std::string to_string(const Complex& z, int digits = 25);
std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Parses "a+bi", "a-bi", "a", "bi" (spaces allowed). Throws DomainError.
Complex parse_complex(const std::string& text, mpfr_prec_t bits);

}  // namespace zeta2::mp
