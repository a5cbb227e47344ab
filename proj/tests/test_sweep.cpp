#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "midx/sweep.hpp"
#include "test_util.hpp"

using namespace midx;

namespace {

const SweepRecord* find(const std::vector<SweepRecord>& recs, const std::string& D) {
  for (const auto& r : recs)
    if (r.D == D) return &r;
  return nullptr;
}

}  // namespace

TEST(Sweep, DegreeSubsetsEnumeration) {
  auto s = degree_subsets(5, 3);
  EXPECT_EQ(s.size(), 41u);
  EXPECT_EQ(s.front(), std::vector<int>{0});
  EXPECT_EQ(s.back(), (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(degree_subsets(2, 5).size(), 7u);
}

TEST(Sweep, ParityChain) {
  EXPECT_TRUE(parity_chain({0}));
  EXPECT_TRUE(parity_chain({0, 1}));
  EXPECT_TRUE(parity_chain({2, 5, 6}));
  EXPECT_FALSE(parity_chain({1}));
  EXPECT_FALSE(parity_chain({0, 2}));
  EXPECT_FALSE(parity_chain({0, 1, 3}));
}

TEST(Sweep, ConjectureSweepSmallCases) {
  auto recs = conjecture1_sweep({2.3}, {kPi / 3}, 2, 1);
  auto* z = find(recs, "I:0");
  ASSERT_NE(z, nullptr);
  EXPECT_TRUE(z->parity_ok);
  EXPECT_EQ(z->strip_verdict, StripVerdict::zero_free);
  EXPECT_TRUE(z->agreement);
  auto* one = find(recs, "I:1");
  ASSERT_NE(one, nullptr);
  EXPECT_FALSE(one->parity_ok);
  EXPECT_EQ(one->strip_verdict, StripVerdict::strip_zero);
  EXPECT_TRUE(one->agreement);
  auto* pair = find(recs, "I:0,I:1");
  ASSERT_NE(pair, nullptr);
  EXPECT_EQ(pair->strip_verdict, StripVerdict::zero_free);
  for (const auto& r : recs) EXPECT_EQ(r.family, "mp");
}

TEST(Sweep, ConjectureSweepDefaultGridHasNoCounterexample) {
  auto recs = conjecture1_sweep(default_conjecture_a_grid(), default_conjecture_phi_grid(), 3);
  auto s = summarize(recs);
  EXPECT_EQ(s.total, 186);
  EXPECT_EQ(s.disagreements, 0);
  EXPECT_EQ(s.errors, 0);
  for (const auto& r : recs) {
    if (r.ell % 2) {
      EXPECT_EQ(r.strip_verdict, StripVerdict::strip_zero) << r.D;
    }
  }
}

TEST(Sweep, ResultsIndependentOfThreadCount) {
  auto a = conjecture1_sweep({1.6, 3.1}, {kPi / 4, 2.0}, 3, 1);
  auto b = conjecture1_sweep({1.6, 3.1}, {kPi / 4, 2.0}, 3, 3);
  std::ostringstream sa, sb;
  write_sweep_csv(sa, a);
  write_sweep_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Sweep, BulletSets) {
  EXPECT_EQ(ch_bullet_sets(1, 2.1, 2.1), (std::vector<std::vector<int>>{{0}, {2}}));
  EXPECT_EQ(ch_bullet_sets(2, 3.4, 1.6).size(), 1u);  // gap 1.8 admits only d1 = 4
  auto b3 = ch_bullet_sets(3, 8, 0.6);
  EXPECT_FALSE(b3.empty());
  for (const auto& d : b3) EXPECT_EQ(d[1], d[0] + 1);
  for (const auto& d : ch_bullet_sets(4, 2, 40)) EXPECT_TRUE(parity_chain(d));
  EXPECT_THROW(ch_bullet_sets(5, 2, 2), Error);
}

TEST(Sweep, BulletScansHaveNoCounterexample) {
  for (int c = 1; c <= 4; ++c) {
    auto s = summarize(ch_sufficient_scan(default_bullet_grid(c), c));
    EXPECT_GT(s.total, 0) << c;
    EXPECT_EQ(s.agreements, s.total) << c;
  }
  auto recs = ch_sufficient_scan({{2, 40}}, 4);
  auto* r = find(recs, "I:0,I:1,I:2");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->strip_verdict, StripVerdict::zero_free);
  EXPECT_EQ(r->condition, 4);
}

TEST(Sweep, DecimalGridValuesAreExact) {
  EXPECT_EQ(detail::decimal_exact(2.3), QQi(mpq_class(23, 10)));
  EXPECT_EQ(detail::decimal_exact(40), QQi(mpq_class(40)));
  EXPECT_EQ(detail::decimal_exact(0.6), QQi(mpq_class(3, 5)));
}

TEST(Sweep, ThreadCapFromEnvironment) {
  const char* old = std::getenv("MIDX_THREADS");
  std::string saved = old ? old : "";
  setenv("MIDX_THREADS", "1", 1);
  EXPECT_EQ(sweep_threads(), 1u);
  if (old)
    setenv("MIDX_THREADS", saved.c_str(), 1);
  else
    unsetenv("MIDX_THREADS");
  EXPECT_GE(sweep_threads(), 1u);
}

TEST(Sweep, PoolKeepsOrder) {
  auto out = run_pool<int>(100, [](size_t k) { return int(k * k); }, 4);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(out[k], k * k);
  EXPECT_TRUE(run_pool<int>(0, [](size_t) { return 0; }, 4).empty());
}

TEST(Sweep, CsvOutput) {
  auto recs = conjecture1_sweep({2.3}, {kPi / 2}, 1, 1);
  std::ostringstream os;
  write_sweep_csv(os, recs);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "family,condition,lambda,D,ell,parity_ok,strip_verdict,min_abs_im,agreement,error");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("mp,0,2.2999999999999998 ", 0), 0u) << line;
  }
  EXPECT_EQ(rows, int(recs.size()));
}

TEST(Sweep, InvalidGridsRejected) {
  try {
    conjecture1_sweep({0.5}, {1.0}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
  }
  EXPECT_THROW(conjecture1_sweep({2}, {kPi}, 2), Error);
  EXPECT_THROW(ch_sufficient_scan({{0.4, 2}}, 1), Error);
}
