#include <gtest/gtest.h>

#include "midx/verifier.hpp"
#include "test_util.hpp"

using namespace midx;
using midx::mt::q;
using midx::mt::qi;

namespace {

const QQi I = QQi::i();

::testing::AssertionResult passes(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.ok()) return ::testing::AssertionFailure() << r.check << ": " << r.detail;
  return ::testing::AssertionSuccess();
}

int count_status(const std::vector<CheckResult>& rs, CheckStatus s) {
  int k = 0;
  for (const auto& r : rs) k += r.status == s;
  return k;
}

}  // namespace

TEST(Verifier, EigencheckExactAtTwoTwo) {
  auto s = make_system(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 2}});
  for (int n = 0; n <= 5; ++n) {
    auto r = eigencheck(s, n);
    EXPECT_TRUE(r.ok()) << n << " " << r.detail;
    EXPECT_EQ(r.residual, 0.0);
  }
}

TEST(Verifier, EigencheckEmptyAndZeroSeed) {
  ContinuousHahn<QQi> l{qi(5, 2, 1, 3), qi(2, 1, -1, 2)};
  auto e = make_system(l, {});
  auto z = make_system(l, {{VType::I, 0}});
  for (int n = 0; n <= 8; ++n) {
    EXPECT_TRUE(eigencheck(e, n).ok()) << n;
    EXPECT_TRUE(eigencheck(z, n).ok()) << n;
  }
}

TEST(Verifier, EigencheckMeixnerPollaczekExact) {
  MeixnerPollaczek<QQi> l{q(2), I};
  for (auto entries : std::vector<std::vector<IndexEntry>>{{{VType::I, 0}}, {{VType::I, 0}, {VType::I, 1}}}) {
    auto s = make_system(l, entries);
    for (int n = 0; n <= 5; ++n) EXPECT_TRUE(eigencheck(s, n).ok()) << n;
  }
}

TEST(Verifier, EigencheckFloatWithinTolerance) {
  auto s = make_system(mp_from_angle(cplx(2.3), 1.0), {{VType::I, 0}, {VType::I, 1}, {VType::I, 2}});
  for (int n = 0; n <= 5; ++n) {
    auto r = eigencheck(s, n);
    EXPECT_TRUE(r.ok()) << n << " " << r.detail;
    EXPECT_LT(r.residual, 1e-11);
  }
}

TEST(Verifier, EigencheckDetectsCorruption) {
  // a tolerance of zero rejects any rounding error
  auto s = make_system(ContinuousHahn<cplx>{cplx(2.3, 0.3), cplx(1.7, -0.2)}, {{VType::I, 0}, {VType::II, 1}});
  auto saved = tolerances();
  tolerances().identity = 0;
  bool any_fail = false;
  for (int n = 1; n <= 4; ++n) any_fail = any_fail || !eigencheck(s, n).ok();
  tolerances() = saved;
  EXPECT_TRUE(any_fail);
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(eigencheck(s, n).ok()) << n;
}

TEST(Verifier, ShiftOperatorsExact) {
  std::vector<DeformedSystem<ContinuousHahn<QQi>>> ch{make_system(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 2}}),
                                                      make_system(ContinuousHahn<QQi>{q(7, 2), q(7, 2)},
                                                                  {{VType::I, 1}, {VType::II, 0}, {VType::II, 2}})};
  for (const auto& s : ch)
    for (int n = 0; n <= 5; ++n) EXPECT_TRUE(passes(shift_op_check(s, n))) << n;
  auto m = make_system(MeixnerPollaczek<QQi>{q(2), I}, {{VType::I, 0}, {VType::I, 1}});
  for (int n = 0; n <= 5; ++n) EXPECT_TRUE(passes(shift_op_check(m, n))) << n;
  EXPECT_EQ(count_status(shift_op_check(m, 0), CheckStatus::skipped), 1);
}

TEST(Verifier, ClosedFormIdentitiesExact) {
  std::vector<std::pair<ContinuousHahn<QQi>, std::vector<IndexEntry>>> ch{
      {{q(2), q(2)}, {{VType::I, 2}}},
      {{q(7, 2), q(7, 2)}, {{VType::I, 1}, {VType::II, 0}, {VType::II, 2}}},
      {{qi(5, 2, 1, 3), qi(2, 1, -1, 2)}, {{VType::I, 0}, {VType::I, 1}}},
      {{q(7, 2), q(5, 2)}, {{VType::I, 0}, {VType::II, 0}}},
      {{q(9, 2), q(4)}, {{VType::II, 0}, {VType::II, 1}, {VType::II, 3}}}};
  for (const auto& [l, entries] : ch) {
    auto s = make_system(l, entries);
    auto rs = closed_form_identities(s, 3);
    EXPECT_TRUE(passes(rs)) << s.index_set().str();
    EXPECT_EQ(count_status(rs, CheckStatus::fail), 0);
  }
  std::vector<std::pair<MeixnerPollaczek<QQi>, std::vector<IndexEntry>>> mp{
      {{q(2), I}, {{VType::I, 0}, {VType::I, 1}}},
      {{q(7, 2), qi(3, 5, 4, 5)}, {{VType::I, 0}, {VType::I, 1}, {VType::I, 4}}},
      {{q(9, 2), qi(-3, 5, 4, 5)}, {{VType::I, 2}, {VType::I, 5}}}};
  for (const auto& [l, entries] : mp) EXPECT_TRUE(passes(closed_form_identities(make_system(l, entries), 3)));
}

TEST(Verifier, MeixnerPollaczekSingleZeroReductionFactor) {
  MeixnerPollaczek<QQi> l{q(5, 2), qi(3, 5, 4, 5)};
  auto D = validate_index_set({{VType::I, 0}}, l);
  for (int n = 0; n <= 4; ++n) {
    auto red = zero_reduction(l, D, VType::I, n);
    EXPECT_EQ(red.factor, -(q(2) * l.a + q(n) - q(1)));
    EXPECT_EQ(red.D_prime.M(), 0);
  }
}

TEST(Verifier, CrossFactorInTwoTypeLeadingCoefficient) {
  // D = {I:0, II:0}: leading coefficient carries a1+a1*-a2-a2*
  ContinuousHahn<QQi> l{q(7, 2), q(5, 2)};
  auto D = validate_index_set({{VType::I, 0}, {VType::II, 0}}, l);
  EXPECT_EQ(xi_leading_closed(l, D), q(2));
  EXPECT_EQ(build_xi(D, l).leading(), q(2));
  ContinuousHahn<QQi> eq{q(3), qi(3, 1, 1, 2)};
  EXPECT_EQ(xi_leading_closed(eq, validate_index_set({{VType::I, 0}, {VType::II, 0}}, eq)), q(0));
}

TEST(Verifier, LeadingXiForSingleSeedIsVirtualLeading) {
  ContinuousHahn<QQi> l{q(7, 2), q(2)};
  auto D = validate_index_set({{VType::I, 0}}, l);
  EXPECT_EQ(xi_leading_closed(l, D), q(1));
}

TEST(Verifier, PermutationSign) {
  ContinuousHahn<QQi> l{q(7, 2), q(7, 2)};
  EXPECT_TRUE(passes(permutation_check(l, {{VType::I, 2}, {VType::I, 0}, {VType::II, 1}}, 2)));
  EXPECT_TRUE(passes(permutation_check(l, {{VType::II, 2}, {VType::I, 1}, {VType::II, 0}}, 1)));
  MeixnerPollaczek<QQi> m{q(7, 2), I};
  EXPECT_TRUE(passes(permutation_check(m, {{VType::I, 3}, {VType::I, 0}, {VType::I, 1}}, 2)));
}

TEST(Verifier, InterlacingAtAdmissiblePoint) {
  auto s = make_system(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 2}});
  auto rs = interlace_check(s, 8);
  EXPECT_TRUE(passes(rs));
  for (int n = 0; n <= 8; ++n) {
    auto rts = roots(s.p(n));
    int nonreal = 0;
    for (auto r : rts) nonreal += std::abs(r.imag()) > 1e-8 * (1 + std::abs(r));
    EXPECT_EQ(nonreal, 2) << n;
  }
}

TEST(Verifier, InterlacingRefusesInadmissible) {
  auto s = make_system(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 1}});
  try {
    interlace_check(s, 3);
    FAIL() << "expected NotAdmissible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAdmissible);
  }
}

TEST(Verifier, StripCheckReportsVerdict) {
  ContinuousHahn<QQi> l{q(2), q(2)};
  auto good = make_system(l, {{VType::I, 2}});
  EXPECT_TRUE(strip_check(good.strip(), good.verdict()).ok());
  auto odd = make_system(l, {{VType::I, 1}});
  auto r = strip_check(odd.strip(), odd.verdict());
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.detail.find("odd ell_D"), std::string::npos);
  Poly<QQi> synth{q(1, 16), q(0), q(1)};
  EXPECT_EQ(strip_scan(synth).verdict, StripVerdict::strip_zero);
}

TEST(Verifier, EnforceThrowsTypedErrors) {
  std::vector<CheckResult> rs{{"eigen[n=1]", CheckStatus::fail, 1.0, "bad"}};
  try {
    enforce(rs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IdentityViolated);
  }
  rs = {{"interlace[n=2]", CheckStatus::fail, 1.0, "bad"}};
  try {
    enforce(rs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InterlacingViolated);
  }
  rs = {{"x", CheckStatus::skipped, 0, ""}};
  EXPECT_NO_THROW(enforce(rs));
}

TEST(Verifier, RawFormsTwoTypeFloat) {
  auto s = make_system(ContinuousHahn<cplx>{cplx(2.3, 0.3), cplx(1.7, -0.2)}, {{VType::I, 0}, {VType::II, 1}});
  for (int n = 0; n <= 3; ++n) EXPECT_TRUE(passes(raw_form_check(s, n))) << n;
}

TEST(Verifier, SamplePointsAreDeterministic) {
  EXPECT_EQ(sample_points(20, 7), sample_points(20, 7));
  EXPECT_NE(sample_points(20, 7), sample_points(20, 8));
  for (double x : sample_points(50, 1)) {
    EXPECT_GE(x, -3.0);
    EXPECT_LE(x, 3.0);
  }
}
