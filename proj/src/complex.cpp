#include "zeta2/complex.hpp"

#include "zeta2/error.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace zeta2::mp {

Complex& Complex::operator*=(const Complex& o) {
  const auto b = std::max(bits(), o.bits());
  Real ac(re, b), bd(im, b), ad(re, b), bc(im, b);
  ac *= o.re;
  bd *= o.im;
  ad *= o.im;
  bc *= o.re;
  re = std::move(ac);
  re -= bd;
  im = std::move(ad);
  im += bc;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  const auto b = std::max(bits(), o.bits());
  if (abs(o.re) >= abs(o.im)) {
    Real r = o.im / o.re;
    Real den = o.re + o.im * r;
    Real x = (re + im * r) / den;
    Real y = (im - re * r) / den;
    re = Real(x, b);
    im = Real(y, b);
  } else {
    Real r = o.re / o.im;
    Real den = o.re * r + o.im;
    Real x = (re * r + im) / den;
    Real y = (im * r - re) / den;
    re = Real(x, b);
    im = Real(y, b);
  }
  return *this;
}

Complex operator-(double a, const Complex& b) { return Complex(a - b.re, -b.im); }

Complex operator/(double a, const Complex& b) {
  Complex r(a, 0.0, b.bits());
  r /= b;
  return r;
}

void mul_into(Complex& out, const Complex& a, const Complex& b, Real& scratch) {
  mpfr_mul(out.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_mul(scratch.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_sub(out.re.raw(), out.re.raw(), scratch.raw(), MPFR_RNDN);
  mpfr_mul(out.im.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_mul(scratch.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_add(out.im.raw(), out.im.raw(), scratch.raw(), MPFR_RNDN);
}

void add_scaled_into(Complex& out, const Complex& a, const Real& x, Real& scratch) {
  mpfr_mul(scratch.raw(), a.re.raw(), x.raw(), MPFR_RNDN);
  mpfr_add(out.re.raw(), out.re.raw(), scratch.raw(), MPFR_RNDN);
  mpfr_mul(scratch.raw(), a.im.raw(), x.raw(), MPFR_RNDN);
  mpfr_add(out.im.raw(), out.im.raw(), scratch.raw(), MPFR_RNDN);
}

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real arg(const Complex& z) {
  // atan2(-0, x<0) would give -pi; the principal branch wants +pi.
  if (z.im.is_zero()) {
    if (z.re.sign() < 0) return pi(z.bits());
    return Real(z.bits());
  }
  return atan2(z.im, z.re);
}

Complex sqr(const Complex& z) {
  Real re = (z.re - z.im) * (z.re + z.im);
  Real im = z.re * z.im;
  im.ldexp(1);
  return Complex(std::move(re), std::move(im));
}

Complex reciprocal(const Complex& z) { return 1.0 / z; }

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  Real s(z.bits()), c(z.bits());
  mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
  return Complex(m * c, m * s);
}

Complex log_unchecked(const Complex& z) {
  Real m = log(abs(z));
  return Complex(std::move(m), arg(z));
}

Complex sin(const Complex& z) {
  Real s(z.bits()), c(z.bits());
  mpfr_sin_cos(s.raw(), c.raw(), z.re.raw(), MPFR_RNDN);
  return Complex(s * cosh(z.im), c * sinh(z.im));
}

Complex cos(const Complex& z) {
  Real s(z.bits()), c(z.bits());
  mpfr_sin_cos(s.raw(), c.raw(), z.re.raw(), MPFR_RNDN);
  return Complex(c * cosh(z.im), -(s * sinh(z.im)));
}

Complex cot(const Complex& z) {
  // cot z = i (e^{2iz} + 1) / (e^{2iz} - 1); for Im z < 0 use cot(conj z) = conj cot z
  // so that |e^{2iz}| <= 1 and nothing overflows.
  if (z.im.sign() < 0) return conj(cot(conj(z)));
  Complex w(-(z.im * 2L), z.re * 2L);  // 2iz
  Complex e = exp(w);
  Complex num = e + 1.0;
  Complex den = e - 1.0;
  Complex q = num / den;
  return Complex(-q.im, q.re);
}

Complex pow(const Real& base, const Complex& z) {
  Real lb = log(Real(base, z.bits()));
  return exp(z * lb);
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return reciprocal(pow(z, -n));
  Complex result(1.0, 0.0, z.bits());
  Complex b = z;
  while (n > 0) {
    if (n & 1) result *= b;
    n >>= 1;
    if (n > 0) b = sqr(b);
  }
  return result;
}

double magnitude_hint(const Complex& z) noexcept {
  return std::max(std::fabs(z.re.to_double()), std::fabs(z.im.to_double()));
}

std::string to_string(const Complex& z, int digits) {
  std::string re = to_string(z.re, digits);
  std::string im = to_string(abs(z.im), digits);
  const bool neg = z.im.sign() < 0;
  return re + (neg ? "-" : "+") + im + "i";
}

std::ostream& operator<<(std::ostream& os, const Complex& z) { return os << to_string(z); }

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

Complex parse_complex(const std::string& text, mpfr_prec_t bits) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw DomainError("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return Complex(Real(s, bits), Real(bits));
  const std::string body = s.substr(0, s.size() - 1);
  // Find the sign separating real and imaginary parts, skipping exponent signs.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return Real(1L, bits);
    if (t == "-") return Real(-1L, bits);
    return Real(t, bits);
  };
  if (split == std::string::npos) return Complex(Real(bits), imag_part(body));
  return Complex(Real(body.substr(0, split), bits), imag_part(body.substr(split)));
}

}  // namespace zeta2::mp
