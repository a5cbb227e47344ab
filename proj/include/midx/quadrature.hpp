#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "midx/casoratian.hpp"
#include "midx/virtual_states.hpp"

namespace midx {

struct QuadratureOptions {
  double rel_tol = 1e-10;  // successive levels
  double tail = 1e-18;     // integrand at +-X relative to its peak
  double margin = 1.2;     // safety factor on X
  int min_level = 4;
  int max_level = 12;
};

struct QuadratureReport {
  int n = 0, m = 0;
  double value = 0;
  double expected = 0;
  double rel_error = 0;
  double truncation_radius = 0;
  int node_count = 0;
};

// h_{D,n} = h_n prod_j (E_n - E~_{d_j})
template <class Fam>
double norm_hD(const DeformedSystem<Fam>& s, int n) {
  const auto& l = s.lambda();
  double h = l.norm(n);
  double En = real_part(l.energy(n));
  for (const auto& e : s.index_set().entries()) {
    double ev = real_part(virtual_energy(l, e.type, e.degree));
    if (!(ev < 0))
      throw Error(ErrorCode::InvalidParams, std::string("virtual energy of ") + vtype_name(e.type) + ":" +
                                                std::to_string(e.degree) + " is not negative");
    h *= En - ev;
  }
  return h;
}

namespace detail {

// log psi_D^2 with the polynomials converted once.
template <class Fam>
struct LogWeight {
  Fam shifted;
  Poly<cplx> xi;

  explicit LogWeight(const DeformedSystem<Fam>& s) : shifted(s.lambda_shifted()), xi(to_complex(s.xi())) {
    require_admissible(s);
  }
  double operator()(double x) const {
    const cplx h(0, 0.5);
    cplx prod = xi(x - h) * xi(x + h);
    if (!(prod.real() > 0) || std::abs(prod.imag()) > 1e-8 * std::abs(prod))
      throw Error(ErrorCode::WeightFailure, "Xi(x-i/2) Xi(x+i/2) is not positive at x = " + std::to_string(x));
    return 2 * shifted.groundstate_log(x) - std::log(prod.real());
  }
};

inline double log_abs(const Poly<cplx>& p, double x) {
  double v = std::abs(p(cplx(x)));
  return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

// Scans the log envelope of the largest integrand outward from 0 on both sides.
template <class W>
double truncation_radius(const W& logw, const std::vector<Poly<cplx>>& ps, const QuadratureOptions& opt = {}) {
  auto env = [&](double x) {
    double lp = -std::numeric_limits<double>::infinity();
    for (const auto& p : ps) lp = std::max(lp, 2 * detail::log_abs(p, x));
    return logw(x) + lp;
  };
  const double step = 0.25, limit = 2000;
  double peak = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> samples;
  for (int side : {-1, 1}) {
    int below = 0;
    for (double r = 0; r <= limit; r += step) {
      double v = env(side * r);
      samples.push_back({r, v});
      peak = std::max(peak, v);
      below = v < peak + std::log(opt.tail) ? below + 1 : 0;
      if (below >= 40 && r > 4) break;
    }
  }
  const double cut = peak + std::log(opt.tail);
  double far = 1.0;
  for (const auto& [r, v] : samples)
    if (v >= cut) far = std::max(far, r + step);
  return far * opt.margin;
}

struct GramResult {
  std::vector<std::vector<double>> value;  // value[n][m]
  std::vector<QuadratureReport> reports;   // n <= m
  double truncation_radius = 0;
  int node_count = 0;
  int level = 0;
};

// Integrates psi_D^2 P_{D,n} P_{D,m} for all n, m <= N in one tanh-sinh pass per level.
template <class Fam>
GramResult gram_matrix(const DeformedSystem<Fam>& s, int N, const QuadratureOptions& opt = {}) {
  detail::LogWeight<Fam> logw(s);
  std::vector<Poly<cplx>> ps;
  for (int n = 0; n <= N; ++n) ps.push_back(to_complex(s.p(n)));
  const double X = truncation_radius(logw, ps, opt);
  const int K = N + 1;

  // sum over nodes t = k h of w(t) f(x(t)), accumulated into acc (K*K, symmetric)
  int nodes = 0;
  auto add_node = [&](double t, std::vector<double>& acc) {
    double u = 0.5 * kPi * std::sinh(t);
    double ch = std::cosh(u);
    double x = X * std::tanh(u);
    double wgt = X * 0.5 * kPi * std::cosh(t) / (ch * ch);
    if (!(wgt > 0) || !std::isfinite(x)) return false;
    double lw = logw(x);
    double base = std::exp(lw) * wgt;
    ++nodes;
    std::vector<double> pv(K);
    for (int n = 0; n < K; ++n) pv[n] = ps[n](cplx(x)).real();
    for (int n = 0; n < K; ++n)
      for (int m = n; m < K; ++m) acc[n * K + m] += base * pv[n] * pv[m];
    return std::abs(base) > 0;
  };
  // t range where the node weight is still representable
  const double tmax = 3.5;
  std::vector<double> sum(K * K, 0.0);
  double h = 0.5;
  add_node(0, sum);
  for (double t = h; t <= tmax; t += h) {
    add_node(t, sum);
    add_node(-t, sum);
  }
  std::vector<double> prev;
  int level = 0;
  bool converged = false;
  for (level = 1; level <= opt.max_level; ++level) {
    // new midpoints at spacing h/2
    for (double t = h / 2; t <= tmax; t += h) {
      add_node(t, sum);
      add_node(-t, sum);
    }
    h /= 2;
    std::vector<double> cur(sum.size());
    for (size_t k = 0; k < sum.size(); ++k) cur[k] = sum[k] * h;
    if (!prev.empty() && level >= opt.min_level) {
      double scale = 0, diff = 0;
      for (int n = 0; n < K; ++n) scale = std::max(scale, std::abs(cur[n * K + n]));
      for (size_t k = 0; k < cur.size(); ++k) diff = std::max(diff, std::abs(cur[k] - prev[k]));
      if (diff <= opt.rel_tol * scale) {
        prev = cur;
        converged = true;
        break;
      }
    }
    prev = cur;
  }
  if (!converged) throw Error(ErrorCode::NonConvergentQuadrature, "tanh-sinh levels did not settle");

  GramResult g;
  g.truncation_radius = X;
  g.node_count = nodes;
  g.level = level;
  g.value.assign(K, std::vector<double>(K));
  for (int n = 0; n < K; ++n)
    for (int m = n; m < K; ++m) g.value[n][m] = g.value[m][n] = prev[n * K + m];
  const double h0 = norm_hD(s, 0);
  for (int n = 0; n < K; ++n)
    for (int m = n; m < K; ++m) {
      QuadratureReport r;
      r.n = n;
      r.m = m;
      r.value = g.value[n][m];
      r.expected = n == m ? norm_hD(s, n) : 0.0;
      r.rel_error = std::abs(r.value - r.expected) / std::max(std::abs(r.expected), h0);
      r.truncation_radius = X;
      r.node_count = nodes;
      g.reports.push_back(r);
    }
  return g;
}

template <class Fam>
QuadratureReport integrate_pair(const DeformedSystem<Fam>& s, int n, int m, const QuadratureOptions& opt = {}) {
  // the Gram pass is cheap at these sizes; take the entry out of it
  auto g = gram_matrix(s, std::max(n, m), opt);
  for (const auto& r : g.reports)
    if (r.n == std::min(n, m) && r.m == std::max(n, m)) {
      QuadratureReport out = r;
      out.n = n;
      out.m = m;
      return out;
    }
  throw Error(ErrorCode::NonConvergentQuadrature, "pair not produced");
}

}  // namespace midx
