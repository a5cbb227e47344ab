#include <gtest/gtest.h>

#include <cmath>

#include "midx/gamma.hpp"

using namespace midx;

TEST(Gamma, RealValuesMatchStd) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, 20.0, 101.5}) EXPECT_NEAR(log_abs_gamma(cplx(x)), std::lgamma(x), 1e-12 * (1 + std::abs(std::lgamma(x))));
  for (double x : {-0.5, -2.3, -7.9}) EXPECT_NEAR(log_abs_gamma(cplx(x)), std::lgamma(x), 1e-11);
}

TEST(Gamma, HalfIntegerClosedForm) {
  // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
  for (double y : {0.0, 0.7, 3.0, 12.0, 60.0})
    EXPECT_NEAR(2 * log_abs_gamma(cplx(0.5, y)), std::log(kPi) - std::log(std::cosh(kPi * y)), 1e-11 * (1 + kPi * y));
}

TEST(Gamma, RecurrenceHolds) {
  for (cplx z : {cplx(0.3, 0.4), cplx(-2.7, 1.1), cplx(5.0, -3.0), cplx(-0.4, -8.0)}) {
    cplx d = loggamma(z + 1.0) - loggamma(z) - std::log(z);
    // equal modulo 2 pi i
    double k = std::round(d.imag() / (2 * kPi));
    EXPECT_NEAR(std::abs(d - cplx(0, 2 * kPi * k)), 0, 1e-11);
  }
}

TEST(Gamma, ConjugateSymmetry) {
  cplx z(1.7, 2.3);
  EXPECT_NEAR(std::abs(loggamma(std::conj(z)) - std::conj(loggamma(z))), 0, 1e-13);
}

TEST(Gamma, PolesThrow) {
  EXPECT_THROW(loggamma(cplx(0.0)), Error);
  EXPECT_THROW(loggamma(cplx(-3.0)), Error);
  EXPECT_THROW(log_abs_gamma(cplx(-5.0)), Error);
}
