#pragma once

#include <cmath>
#include <complex>

#include "midx/errors.hpp"
#include "midx/scalar.hpp"

namespace midx {

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

// Lanczos, g = 7, nine terms.
inline cplx lanczos_loggamma(cplx z) {
  static constexpr double g = 7.0;
  static constexpr double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                  771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                  -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  cplx s = c[0];
  for (int k = 1; k < 9; ++k) s += c[k] / (z + double(k));
  cplx t = z + g + 0.5;
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(s);
}

// log|sin(pi z)| without overflow for large |Im z|.
inline double log_abs_sin_pi(cplx z) {
  double x = z.real(), y = std::abs(z.imag());
  double py = kPi * y;
  if (py < 20) {
    double s = std::sin(kPi * x), sh = std::sinh(py);
    return 0.5 * std::log(s * s + sh * sh);
  }
  double e = std::exp(-py);
  double a = 2 * std::sin(kPi * x) * e, b = 1 - e * e;
  return py - std::log(2.0) + 0.5 * std::log(a * a + b * b);
}

inline bool near_pole(cplx z) {
  return z.real() <= 0 && std::abs(z.imag()) < 1e-14 && std::abs(z.real() - std::round(z.real())) < 1e-14;
}

}  // namespace detail

// Principal branch of log Gamma, analytic on the plane cut along (-inf, 0].
// For Re z < 1/2 the upward recurrence is used instead of reflection, which
// keeps the branch continuous off the real axis.
inline cplx loggamma(cplx z) {
  if (detail::near_pole(z)) throw Error(ErrorCode::PoleHit, "log-gamma evaluated at a pole");
  if (z.real() >= 0.5) return detail::lanczos_loggamma(z);
  int m = int(std::ceil(0.5 - z.real()));
  cplx acc = 0;
  for (int k = 0; k < m; ++k) acc += std::log(z + double(k));
  return detail::lanczos_loggamma(z + double(m)) - acc;
}

// log|Gamma(z)|, with the reflection formula for Re z < 1/2.
inline double log_abs_gamma(cplx z) {
  if (detail::near_pole(z)) throw Error(ErrorCode::PoleHit, "log-gamma evaluated at a pole");
  if (z.real() >= 0.5) return detail::lanczos_loggamma(z).real();
  return std::log(kPi) - detail::log_abs_sin_pi(z) - detail::lanczos_loggamma(1.0 - z).real();
}

}  // namespace midx
