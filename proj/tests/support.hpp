#pragma once

#include "zeta2/complex.hpp"
#include "zeta2/precision.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace zeta2::testing {

using mp::Complex;
using mp::Real;

inline double rel_err(const Complex& a, const Complex& b) {
  const Real d = mp::abs(a - b);
  const Real m = mp::max(mp::abs(b), Real(1e-300, b.bits()));
  return (d / m).to_double();
}

inline double abs_err(const Complex& a, const Complex& b) { return mp::abs(a - b).to_double(); }

/// Richardson extrapolation for values v[j] = f(h_j), h_j = h_0 / 2^j,
/// error expansion in integer powers of h.
inline Complex richardson(std::vector<Complex> v) {
  for (std::size_t level = 1; level < v.size(); ++level) {
    const double f = std::ldexp(1.0, static_cast<int>(level));
    for (std::size_t j = v.size() - 1; j >= level; --j) {
      v[j] = (v[j] * f - v[j - 1]) / (f - 1.0);
    }
  }
  return v.back();
}

inline std::vector<Complex> random_points(std::mt19937_64& rng, int n, double smin, double smax, double tmin,
                                          double tmax, mpfr_prec_t bits) {
  std::uniform_real_distribution<double> ds(smin, smax), dt(tmin, tmax);
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) {
    const double s = ds(rng);
    const double t = dt(rng);
    out.emplace_back(s, t, bits);
  }
  return out;
}

}  // namespace zeta2::testing
