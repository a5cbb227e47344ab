#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "midx/casoratian.hpp"
#include "midx/strip.hpp"
#include "midx/virtual_states.hpp"

namespace midx {

struct SweepRecord {
  std::string family;          // "ch" or "mp"
  std::vector<double> lambda;  // (a, phi) or (Re a1, Im a1, Re a2, Im a2)
  std::string D;
  int ell = 0;
  bool parity_ok = false;
  StripVerdict strip_verdict = StripVerdict::zero_free;
  double min_abs_im = 0;
  bool agreement = false;  // conjecture sweep: parity_ok == zero_free; scans: zero_free
  int condition = 0;       // 0 for the conjecture sweep, 1..4 for the cH scans
  std::string error;       // build failure, empty otherwise
};

struct SweepSummary {
  int total = 0;
  int agreements = 0;
  int disagreements = 0;  // excludes boundary_ambiguous and errored points
  int ambiguous = 0;
  int errors = 0;
  std::vector<SweepRecord> disagreement_records;
  std::vector<SweepRecord> ambiguous_records;
  std::vector<SweepRecord> error_records;
};

inline SweepSummary summarize(const std::vector<SweepRecord>& recs) {
  SweepSummary s;
  for (const auto& r : recs) {
    ++s.total;
    if (!r.error.empty()) {
      ++s.errors;
      s.error_records.push_back(r);
    } else if (r.strip_verdict == StripVerdict::boundary_ambiguous) {
      ++s.ambiguous;
      s.ambiguous_records.push_back(r);
    } else if (r.agreement) {
      ++s.agreements;
    } else {
      ++s.disagreements;
      s.disagreement_records.push_back(r);
    }
  }
  return s;
}

// Worker count: hardware concurrency, capped by MIDX_THREADS when set.
inline unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MIDX_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, unsigned(cap));
  }
  return n;
}

// Runs job(k) for k < count on a pool; results land at index k so the order is fixed.
template <class R>
std::vector<R> run_pool(size_t count, const std::function<R(size_t)>& job, unsigned threads = sweep_threads()) {
  std::vector<R> out(count);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < count; k = next++) out[k] = job(k);
  };
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

// All strictly increasing subsets of {0..vmax} with 1 <= size <= M_max, by size then lexicographically.
inline std::vector<std::vector<int>> degree_subsets(int vmax, int M_max) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int d = start; d <= vmax; ++d) {
      cur.push_back(d);
      rec(d + 1, left - 1);
      cur.pop_back();
    }
  };
  for (int m = 1; m <= M_max; ++m) rec(0, m);
  return out;
}

// (-1)^{d_j} = (-1)^{j-1} for the sorted degrees
inline bool parity_chain(const std::vector<int>& d) {
  for (size_t j = 0; j < d.size(); ++j)
    if (d[j] % 2 != int(j % 2)) return false;
  return true;
}

namespace detail {

template <class Fam>
void scan_into(SweepRecord& r, const Fam& l, const std::vector<IndexEntry>& entries) {
  try {
    auto D = validate_index_set(entries, l);
    r.D = D.str();
    r.ell = D.ell();
    auto rep = strip_scan(build_xi(D, l));
    r.strip_verdict = rep.verdict;
    r.min_abs_im = rep.min_abs_im;
  } catch (const Error& e) {
    r.error = e.what();
  }
}

// Shortest decimal rendering of a grid value, as an exact rational.
inline QQi decimal_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  std::string t = buf;
  if (t.find_first_of("eE") != std::string::npos) return QQi(mpq_class(v));
  auto dot = t.find('.');
  if (dot == std::string::npos) return QQi(mpq_class(t, 10));
  std::string digits = t.substr(0, dot) + t.substr(dot + 1);
  std::string den = "1" + std::string(t.size() - dot - 1, '0');
  mpq_class q(digits + "/" + den, 10);
  q.canonicalize();
  return QQi(q);
}

inline std::vector<IndexEntry> type_one_entries(const std::vector<int>& d) {
  std::vector<IndexEntry> e;
  for (int v : d) e.push_back({VType::I, v});
  return e;
}

}  // namespace detail

// Meixner-Pollaczek: every D in the admissible range with |D| <= M_max, at every (a, phi).
inline std::vector<SweepRecord> conjecture1_sweep(const std::vector<double>& a_grid, const std::vector<double>& phi_grid,
                                                  int M_max, unsigned threads = sweep_threads()) {
  struct Job {
    double a, phi;
    std::vector<int> d;
  };
  std::vector<Job> jobs;
  for (double a : a_grid) {
    if (!(a > 0.5)) throw Error(ErrorCode::InvalidParams, "conjecture sweep needs a > 1/2");
    for (double phi : phi_grid) {
      if (!(phi > 0 && phi < kPi)) throw Error(ErrorCode::InvalidParams, "conjecture sweep needs 0 < phi < pi");
      int vmax = admissible_max(mp_from_angle(cplx(a), phi), VType::I);
      for (auto& d : degree_subsets(vmax, M_max)) jobs.push_back({a, phi, d});
    }
  }
  return run_pool<SweepRecord>(
      jobs.size(),
      [&](size_t k) {
        const Job& j = jobs[k];
        SweepRecord r;
        r.family = "mp";
        r.lambda = {j.a, j.phi};
        r.parity_ok = parity_chain(j.d);
        detail::scan_into(r, mp_from_angle(cplx(j.a), j.phi), detail::type_one_entries(j.d));
        // odd degree with real coefficients always has a real zero
        if (r.error.empty() && r.ell % 2 && r.strip_verdict != StripVerdict::strip_zero)
          r.error = "odd ell_D without a zero in the strip";
        r.agreement = r.parity_ok == (r.strip_verdict == StripVerdict::zero_free);
        return r;
      },
      threads);
}

// Type I sets allowed by bullet `condition` for real (a1, a2); M_max bounds the chain bullet.
inline std::vector<std::vector<int>> ch_bullet_sets(int condition, double a1, double a2, int M_max = 3) {
  int vmax = admissible_max(ContinuousHahn<cplx>{a1, a2}, VType::I);
  std::vector<std::vector<int>> out;
  const double gap = a1 - a2;
  switch (condition) {
    case 1:
      for (int d1 = 0; d1 <= vmax; d1 += 2)
        if (gap < 0.5 * (d1 + 1)) out.push_back({d1});
      break;
    case 2:
      for (int d1 = 0; d1 <= vmax; d1 += 2)
        for (int d2 = d1 + 1; d2 <= vmax; d2 += 2)
          if (gap < 0.5 * (d1 + 1)) out.push_back({d1, d2});
      break;
    case 3:
      for (int d1 = 0; d1 + 1 <= vmax; d1 += 2)
        if (gap > d1 + 3) out.push_back({d1, d1 + 1});
      break;
    case 4:
      for (auto& d : degree_subsets(vmax, M_max))
        if (parity_chain(d)) out.push_back(d);
      break;
    default: throw Error(ErrorCode::InvalidParams, "condition id must be 1..4");
  }
  return out;
}

// Continuous Hahn with M_II = 0: every grid point and every D meeting the bullet's hypotheses.
// Built exactly from the decimal grid values; agreement false is a counterexample.
inline std::vector<SweepRecord> ch_sufficient_scan(const std::vector<std::pair<double, double>>& grid, int condition,
                                                   unsigned threads = sweep_threads(), int M_max = 3) {
  struct Job {
    double a1, a2;
    std::vector<int> d;
  };
  std::vector<Job> jobs;
  for (auto [a1, a2] : grid) {
    if (!(a1 > 0.5 && a2 > 0.5)) throw Error(ErrorCode::InvalidParams, "cH scan needs Re a_i > 1/2");
    for (auto& d : ch_bullet_sets(condition, a1, a2, M_max)) jobs.push_back({a1, a2, d});
  }
  return run_pool<SweepRecord>(
      jobs.size(),
      [&](size_t k) {
        const Job& j = jobs[k];
        SweepRecord r;
        r.family = "ch";
        r.lambda = {j.a1, 0, j.a2, 0};
        r.condition = condition;
        r.parity_ok = parity_chain(j.d);
        detail::scan_into(r, ContinuousHahn<QQi>{detail::decimal_exact(j.a1), detail::decimal_exact(j.a2)},
                          detail::type_one_entries(j.d));
        r.agreement = r.error.empty() && r.strip_verdict == StripVerdict::zero_free;
        return r;
      },
      threads);
}

inline std::vector<double> default_conjecture_a_grid() { return {1.6, 2.3, 3.1}; }
inline std::vector<double> default_conjecture_phi_grid() { return {kPi / 4, kPi / 2, 3 * kPi / 4}; }

// 3x3 real grids; bullet 3 needs a1 well above a2, bullet 4 a1 well below a2.
inline std::vector<std::pair<double, double>> default_bullet_grid(int condition) {
  std::vector<double> g1{1.6, 2.1, 3.4}, g2 = g1;
  if (condition == 3) g1 = {5, 6.5, 8}, g2 = {0.6, 0.8, 1.1};
  if (condition == 4) g1 = {1.6, 2.3, 3.1}, g2 = {30, 40, 50};
  std::vector<std::pair<double, double>> out;
  for (double x : g1)
    for (double y : g2) out.push_back({x, y});
  return out;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& recs) {
  os << "family,condition,lambda,D,ell,parity_ok,strip_verdict,min_abs_im,agreement,error\n";
  char buf[64];
  for (const auto& r : recs) {
    std::string lam;
    for (size_t k = 0; k < r.lambda.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%s%.17g", k ? " " : "", r.lambda[k]);
      lam += buf;
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    std::snprintf(buf, sizeof buf, "%.6e", r.min_abs_im);
    os << r.family << ',' << r.condition << ',' << lam << ",\"" << r.D << "\"," << r.ell << ','
       << (r.parity_ok ? 1 : 0) << ',' << to_string(r.strip_verdict) << ',' << buf << ','
       << (r.agreement ? 1 : 0) << ",\"" << err << "\"\n";
  }
}

}  // namespace midx
