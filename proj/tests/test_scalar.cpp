#include <gtest/gtest.h>

#include "midx/scalar.hpp"
#include "test_util.hpp"

using namespace midx;
using midx::mt::q;

TEST(Scalar, GaussianRationalArithmeticIsExact) {
  QQi a = QQi::ratio(1, 3) + QQi::i() * QQi::ratio(2, 5);
  QQi b = QQi::ratio(-7, 2) + QQi::i();
  QQi c = a * b / b;
  EXPECT_EQ(c, a);
  EXPECT_EQ((a - a), QQi(0));
  EXPECT_EQ(QQi::i() * QQi::i(), QQi(-1));
  EXPECT_EQ(conj(conj(a)), a);
}

TEST(Scalar, DivisionByZeroThrows) {
  EXPECT_THROW(QQi(1) / QQi(0), Error);
}

TEST(Scalar, StrictFloor) {
  EXPECT_EQ(strict_floor_real(q(3)), 2);
  EXPECT_EQ(strict_floor_real(q(5, 2)), 2);
  EXPECT_EQ(strict_floor_real(q(2)), 1);
  EXPECT_EQ(strict_floor_real(q(-1, 2)), -1);
  EXPECT_EQ(strict_floor_real(cplx(2.2)), 2);
  EXPECT_EQ(strict_floor_real(cplx(3.0)), 2);
}

TEST(Scalar, ParseExactForms) {
  auto a = ComplexScalar::parse("3/2");
  ASSERT_TRUE(a.is_exact());
  EXPECT_EQ(a.exact(), q(3, 2));
  auto b = ComplexScalar::parse("2+1/3i");
  ASSERT_TRUE(b.is_exact());
  EXPECT_EQ(b.exact(), q(2) + QQi::i() * q(1, 3));
  EXPECT_EQ(ComplexScalar::parse("-i").exact(), -QQi::i());
  EXPECT_EQ(ComplexScalar::parse("-1/4i").exact(), QQi::i() * q(-1, 4));
  EXPECT_EQ(ComplexScalar::parse(" 5 ").exact(), q(5));
}

TEST(Scalar, ParseFloatForms) {
  auto a = ComplexScalar::parse("1.5");
  EXPECT_FALSE(a.is_exact());
  EXPECT_DOUBLE_EQ(a.value().real(), 1.5);
  auto b = ComplexScalar::parse("0.25-2i");
  EXPECT_FALSE(b.is_exact());
  EXPECT_DOUBLE_EQ(b.value().imag(), -2.0);
  auto c = ComplexScalar::parse("1e-3+2.5e1i");
  EXPECT_DOUBLE_EQ(c.value().real(), 1e-3);
  EXPECT_DOUBLE_EQ(c.value().imag(), 25.0);
}

TEST(Scalar, ParseRejectsGarbage) {
  EXPECT_THROW(ComplexScalar::parse(""), Error);
  EXPECT_THROW(ComplexScalar::parse("abc"), Error);
  EXPECT_THROW(ComplexScalar::parse("1+2+3"), Error);
  EXPECT_THROW(ComplexScalar::parse("1/0"), Error);
  EXPECT_THROW(ComplexScalar::parse("2i+3i"), Error);
}

TEST(Scalar, ExactArithmeticStaysExact) {
  auto a = ComplexScalar::parse("1/3"), b = ComplexScalar::parse("2/7i");
  auto c = a * b + a / b - a;
  EXPECT_TRUE(c.is_exact());
  EXPECT_FALSE(c.demoted());
}

TEST(Scalar, MixedArithmeticDemotes) {
  auto a = ComplexScalar::parse("1/3"), b = ComplexScalar::parse("0.5");
  auto c = a + b;
  EXPECT_FALSE(c.is_exact());
  EXPECT_TRUE(c.demoted());
  EXPECT_NEAR(c.value().real(), 1.0 / 3 + 0.5, 1e-15);
  // the flag survives further float arithmetic
  auto d = c * ComplexScalar(cplx(2.0));
  EXPECT_TRUE(d.demoted());
  // pure float arithmetic is not a demotion
  auto e = b * b;
  EXPECT_FALSE(e.demoted());
}

TEST(Scalar, IPow) {
  EXPECT_EQ(i_pow<QQi>(0), QQi(1));
  EXPECT_EQ(i_pow<QQi>(3), -QQi::i());
  EXPECT_EQ(i_pow<QQi>(-1), -QQi::i());
  EXPECT_EQ(i_pow<QQi>(-2), QQi(-1));
}
