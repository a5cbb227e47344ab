// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "midx/limits.hpp"
#include "midx/quadrature.hpp"
#include "midx/sweep.hpp"
#include "midx/verifier.hpp"

using namespace midx;

namespace {

using Clock = std::chrono::steady_clock;

QQi q(long p, long d = 1) { return QQi(mpq_class(p, d)); }
QQi qi(long p, long d, long ip, long id) { return QQi(mpq_class(p, d), mpq_class(ip, id)); }
const QQi I = QQi::i();

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (ok) note.str("");
    if (ok) note << why;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// A system of either family, stored as closures so the points can be listed together.
struct Point {
  std::string name;
  std::function<std::vector<CheckResult>(int)> gram;  // Gram entries for n, m <= N as pass/fail
  std::function<StripVerdict()> strip;
  std::function<std::vector<CheckResult>(int)> interlace;
  std::function<std::vector<CheckResult>(int)> raw;
};

template <class Fam>
Point make_point(std::string name, const Fam& l, const std::vector<IndexEntry>& entries) {
  auto s = std::make_shared<DeformedSystem<Fam>>(make_system(l, entries));
  Point p;
  p.name = std::move(name);
  p.gram = [s](int N) {
    std::vector<CheckResult> out;
    auto g = gram_matrix(*s, N);
    for (const auto& r : g.reports) {
      CheckResult c{"gram[" + std::to_string(r.n) + "," + std::to_string(r.m) + "]"};
      c.residual = r.n == r.m ? r.rel_error : std::abs(r.value) / std::sqrt(g.value[r.n][r.n] * g.value[r.m][r.m]);
      if (!(c.residual <= 1e-7)) c.status = CheckStatus::fail;
      out.push_back(c);
    }
    return out;
  };
  p.strip = [s] { return s->strip().verdict; };
  p.interlace = [s](int N) { return interlace_check(*s, N); };
  p.raw = [s](int n) { return raw_form_check(*s, n, 20, 7); };
  return p;
}

std::vector<Point> orthogonality_points() {
  std::vector<Point> pts;
  pts.push_back(make_point("ch(2,2){I:2}", ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 2}}));
  pts.push_back(make_point("ch(7/2,7/2){I:1,II:0,II:2}", ContinuousHahn<QQi>{q(7, 2), q(7, 2)},
                           {{VType::I, 1}, {VType::II, 0}, {VType::II, 2}}));
  pts.push_back(make_point("ch(5/2+i/3,2-i/2){I:0,I:1}", ContinuousHahn<QQi>{qi(5, 2, 1, 3), qi(2, 1, -1, 2)},
                           {{VType::I, 0}, {VType::I, 1}}));
  pts.push_back(make_point("ch(2.3+0.3i,1.7-0.2i){I:0,II:1}", ContinuousHahn<cplx>{cplx(2.3, 0.3), cplx(1.7, -0.2)},
                           {{VType::I, 0}, {VType::II, 1}}));
  pts.push_back(make_point("mp(2,pi/2){0,1}", MeixnerPollaczek<QQi>{q(2), I}, {{VType::I, 0}, {VType::I, 1}}));
  pts.push_back(make_point("mp(7/2,(3+4i)/5){0,1,4}", MeixnerPollaczek<QQi>{q(7, 2), qi(3, 5, 4, 5)},
                           {{VType::I, 0}, {VType::I, 1}, {VType::I, 4}}));
  pts.push_back(make_point("mp(2.3,1){0,1,2}", mp_from_angle(cplx(2.3), 1.0), {{VType::I, 0}, {VType::I, 1}, {VType::I, 2}}));
  return pts;
}

std::string first_failure(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.ok()) return r.check + " " + std::string(to_string(r.status)) + " " + r.detail;
  return "";
}

// ---- criteria

Outcome ac1() {
  Outcome o;
  int checks = 0;
  auto exact = [&](const auto& s, const std::string& name) {
    for (int n = 0; n <= 5; ++n) {
      auto r = eigencheck(s, n);
      ++checks;
      if (!r.ok() || r.residual != 0) o.fail(name + " n=" + std::to_string(n) + ": " + r.detail);
    }
  };
  exact(make_system(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 2}}), "ch{I:2}");
  exact(make_system(MeixnerPollaczek<QQi>{q(2), I}, {{VType::I, 0}}), "mp{0}");
  exact(make_system(MeixnerPollaczek<QQi>{q(2), I}, {{VType::I, 0}, {VType::I, 1}}), "mp{0,1}");
  if (o.ok) o.note << checks << " exact eigenequations with zero remainder";
  return o;
}

Outcome ac2() {
  Outcome o;
  std::map<std::string, int> seen;
  int combos = 0;
  auto run = [&](const auto& l, const std::vector<IndexEntry>& entries) {
    auto s = make_system(l, entries);
    const int n_max = 3;
    combos += n_max + 1;
    for (const auto& r : closed_form_identities(s, n_max)) {
      if (!r.ok()) o.fail(s.index_set().str() + " " + r.check + ": " + r.detail);
      if (r.status == CheckStatus::pass) ++seen[r.check.substr(0, r.check.find('['))];
    }
  };
  run(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 2}});
  run(ContinuousHahn<QQi>{q(7, 2), q(7, 2)}, {{VType::I, 1}, {VType::II, 0}, {VType::II, 2}});
  run(ContinuousHahn<QQi>{qi(5, 2, 1, 3), qi(2, 1, -1, 2)}, {{VType::I, 0}, {VType::I, 1}});
  run(ContinuousHahn<QQi>{q(7, 2), q(5, 2)}, {{VType::I, 0}, {VType::II, 0}});
  run(ContinuousHahn<QQi>{q(9, 2), q(4)}, {{VType::II, 0}, {VType::II, 1}, {VType::II, 3}});
  run(MeixnerPollaczek<QQi>{q(2), I}, {{VType::I, 0}, {VType::I, 1}});
  run(MeixnerPollaczek<QQi>{q(7, 2), qi(3, 5, 4, 5)}, {{VType::I, 0}, {VType::I, 1}, {VType::I, 4}});
  run(MeixnerPollaczek<QQi>{q(9, 2), qi(-3, 5, 4, 5)}, {{VType::I, 2}, {VType::I, 5}});
  for (const char* k : {"leading_xi", "leading_p", "p0_vs_xi_delta", "zero_reduction_I", "zero_reduction_II", "type_one_xi",
                        "type_one_p"})
    if (!seen.count(k)) o.fail(std::string("identity ") + k + " never exercised");
  if (combos < 10) o.fail("fewer than 10 combinations");
  if (o.ok) {
    int total = 0;
    for (const auto& [k, v] : seen) total += v;
    o.note << total << " exact identity checks over " << combos << " (lambda, D, n) combinations";
  }
  return o;
}

Outcome ac3(const std::vector<Point>& pts) {
  Outcome o;
  auto base = [&](const auto& l, double want, const std::string& name) {
    auto g = gram_matrix(make_system(l, {}), 0);
    double rel = std::abs(g.value[0][0] - want) / want;
    if (!(rel <= 1e-8)) o.fail(name + " h0 relative error " + std::to_string(rel));
  };
  base(ContinuousHahn<QQi>{q(1), q(1)}, kPi / 3, "ch(1,1)");
  base(MeixnerPollaczek<QQi>{q(1), I}, kPi / 2, "mp(1,pi/2)");
  double worst = 0;
  for (const auto& p : pts) {
    try {
      auto rs = p.gram(5);
      for (const auto& r : rs) worst = std::max(worst, r.residual);
      auto f = first_failure(rs);
      if (!f.empty()) o.fail(p.name + " " + f);
    } catch (const Error& e) {
      o.fail(p.name + " " + e.what());
    }
  }
  if (o.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu points, worst relative residual %.2e; base cases within 1e-8", pts.size(), worst);
    o.note << buf;
  }
  return o;
}

Outcome ac4(const std::vector<Point>& pts) {
  Outcome o;
  for (const auto& p : pts)
    if (p.strip() != StripVerdict::zero_free) o.fail(p.name + " verdict " + std::string(to_string(p.strip())));
  auto odd = make_system(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 1}});
  if (odd.strip().verdict != StripVerdict::strip_zero) o.fail(std::string("{I:1} verdict ") + to_string(odd.strip().verdict));
  Poly<QQi> synth{q(1, 16), q(0), q(1)};
  if (strip_scan(synth).verdict != StripVerdict::strip_zero) o.fail("x^2+1/16 not strip_zero");
  if (o.ok) o.note << pts.size() << " points zero_free; {I:1} and x^2+1/16 strip_zero";
  return o;
}

Outcome ac5(const std::vector<Point>& pts) {
  Outcome o;
  for (const auto& p : pts) {
    try {
      auto f = first_failure(p.interlace(8));
      if (!f.empty()) o.fail(p.name + " " + f);
    } catch (const Error& e) {
      o.fail(p.name + " " + e.what());
    }
  }
  if (o.ok) o.note << pts.size() << " points, n <= 8: n real roots, ell_D non-real, strict interlacing";
  return o;
}

Outcome ac6() {
  Outcome o;
  int ladders = 0;
  auto take = [&](const std::vector<LimitReport>& ls) {
    for (const auto& l : ls) {
      ++ladders;
      if (!ladder_ok(l)) {
        std::ostringstream os;
        os << l.relation << " " << l.quantity << " rate " << l.fitted_rate;
        o.fail(os.str());
      }
    }
  };
  for (const auto& l : {ContinuousHahn<QQi>{q(3, 2), q(5, 2)}, ContinuousHahn<QQi>{qi(5, 2, 1, 3), qi(2, 1, -1, 2)}}) {
    take(wilson_to_ch(l, 3));
    for (int n = 0; n <= 3; ++n)
      if (!wilson_to_ch_energy(l, n).all_zero()) o.fail("wilson->ch E_" + std::to_string(n) + " not error-zero");
  }
  for (const auto& l : {MeixnerPollaczek<QQi>{q(2), I}, MeixnerPollaczek<QQi>{q(7, 2), qi(3, 5, 4, 5)}}) {
    take(ch_to_mp(l, {}, 3));
    take(ch_to_mp(l, {{VType::I, 2}}, 3));
  }
  take(mp_to_ho<QQi>(3, 2));
  if (o.ok) o.note << ladders << " ladders monotone with rate in [-1.3, -0.7]; exact E_n error-zero";
  return o;
}

Outcome ac7() {
  Outcome o;
  auto t0 = Clock::now();
  auto s = summarize(conjecture1_sweep(default_conjecture_a_grid(), default_conjecture_phi_grid(), 3));
  double dt = seconds_since(t0);
  if (s.disagreements) o.fail(std::to_string(s.disagreements) + " disagreements, first " + s.disagreement_records[0].D);
  if (s.errors) o.fail(std::to_string(s.errors) + " errored sets, first " + s.error_records[0].error);
  if (dt > 300) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d sets, %d agree, 0 disagree, %d boundary_ambiguous, %.2f s", s.total, s.agreements,
                  s.ambiguous, dt);
    o.note << buf;
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  auto t0 = Clock::now();
  std::ostringstream counts;
  for (int c = 1; c <= 4; ++c) {
    auto s = summarize(ch_sufficient_scan(default_bullet_grid(c), c));
    if (s.total == 0) o.fail("bullet " + std::to_string(c) + " produced no sets");
    if (s.disagreements)
      o.fail("bullet " + std::to_string(c) + " counterexample " + s.disagreement_records[0].D);
    if (s.errors) o.fail("bullet " + std::to_string(c) + " error " + s.error_records[0].error);
    counts << (c > 1 ? ", " : "") << "bullet " << c << ": " << s.total;
    if (s.ambiguous) counts << " (" << s.ambiguous << " boundary_ambiguous)";
  }
  double dt = seconds_since(t0);
  if (dt > 300) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.ok) {
    char buf[32];
    std::snprintf(buf, sizeof buf, ", %.2f s", dt);
    o.note << counts.str() << " sets, zero counterexamples" << buf;
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  int checks = 0;
  auto exact = [&](const auto& s, const std::string& name) {
    for (int n = 0; n <= 5; ++n)
      for (const auto& r : shift_op_check(s, n)) {
        if (r.status == CheckStatus::skipped) continue;
        ++checks;
        if (!r.ok() || r.residual != 0) o.fail(name + " " + r.check + ": " + r.detail);
      }
  };
  exact(make_system(ContinuousHahn<QQi>{q(2), q(2)}, {{VType::I, 2}}), "ch{I:2}");
  exact(make_system(MeixnerPollaczek<QQi>{q(2), I}, {{VType::I, 0}}), "mp{0}");
  exact(make_system(MeixnerPollaczek<QQi>{q(2), I}, {{VType::I, 0}, {VType::I, 1}}), "mp{0,1}");
  if (o.ok) o.note << checks << " exact intertwining relations";
  return o;
}

Outcome ac10(const std::vector<Point>& pts) {
  Outcome o;
  double worst = 0;
  for (const auto& p : pts)
    for (int n = 0; n <= 3; ++n) {
      auto rs = p.raw(n);
      for (const auto& r : rs) worst = std::max(worst, r.residual);
      auto f = first_failure(rs);
      if (!f.empty()) o.fail(p.name + " " + f);
    }
  if (o.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu systems x 20 points, worst relative difference %.2e", pts.size(), worst);
    o.note << buf;
  }
  return o;
}

}  // namespace

int main() {
  const auto pts = orthogonality_points();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1},
      {"AC2", ac2},
      {"AC3", [&] { return ac3(pts); }},
      {"AC4", [&] { return ac4(pts); }},
      {"AC5", [&] { return ac5(pts); }},
      {"AC6", ac6},
      {"AC7", ac7},
      {"AC8", ac8},
      {"AC9", ac9},
      {"AC10", [&] { return ac10(pts); }},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.ok;
    std::printf("%s %s %s\n", name.c_str(), o.ok ? "PASS" : "FAIL", o.note.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
