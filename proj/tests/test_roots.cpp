#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "midx/roots.hpp"
#include "midx/strip.hpp"
#include "test_util.hpp"

using namespace midx;
using midx::mt::q;

namespace {

double match_error(std::vector<cplx> got, std::vector<cplx> want) {
  double worst = 0;
  for (const auto& w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](cplx a, cplx b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

}  // namespace

TEST(Roots, RecoversKnownRoots) {
  std::mt19937 rng(21);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 12; ++n) {
    std::vector<cplx> rs;
    for (int k = 0; k < n; ++k) rs.emplace_back(2 * g(rng), 2 * g(rng));
    auto p = from_roots(rs, cplx(1.5, -0.5));
    EXPECT_LT(match_error(roots(p), rs), 1e-8) << "degree " << n;
  }
}

TEST(Roots, ExactInputWithZeroRoot) {
  // x^2 (x^2 + 1)
  Poly<QQi> p{q(0), q(0), q(1), q(0), q(1)};
  auto r = roots(p);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_LT(match_error(r, {0, 0, cplx(0, 1), cplx(0, -1)}), 1e-10);
}

TEST(Roots, ConstantHasNoRoots) { EXPECT_TRUE(roots(Poly<QQi>::constant(q(3))).empty()); }

TEST(Strip, Verdicts) {
  // zeros at +-2i: outside the strip
  EXPECT_EQ(strip_scan(Poly<QQi>{q(4), q(0), q(1)}).verdict, StripVerdict::zero_free);
  // zeros at +-i/4: inside
  EXPECT_EQ(strip_scan(Poly<QQi>{q(1, 16), q(0), q(1)}).verdict, StripVerdict::strip_zero);
  // zeros at +-i/2: on the boundary
  auto b = strip_scan(Poly<QQi>{q(1, 4), q(0), q(1)});
  EXPECT_EQ(b.verdict, StripVerdict::boundary_ambiguous);
  EXPECT_NEAR(b.min_abs_im, 0.5, 1e-12);
  // real zeros are inside
  EXPECT_EQ(strip_scan(Poly<QQi>{q(-1), q(0), q(1)}).verdict, StripVerdict::strip_zero);
  EXPECT_EQ(strip_scan(Poly<QQi>::constant(q(2))).verdict, StripVerdict::zero_free);
}
