#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "midx/poly.hpp"

namespace midx {

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 200;
};

namespace detail {

// p(z) and p'(z) together.
inline void horner2(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp) {
  p = 0;
  dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

}  // namespace detail

// All complex roots with multiplicity, by Aberth-Ehrlich iteration. Exact input is
// rounded to binary64 first.
template <class T>
std::vector<cplx> roots(const Poly<T>& poly, const RootOptions& opt = {}) {
  Poly<cplx> p = to_complex(poly);
  std::vector<cplx> out;
  if (p.degree() < 1) return out;

  // strip exact zero roots
  std::vector<cplx> c(p.coeffs());
  size_t z0 = 0;
  while (z0 < c.size() && c[z0] == cplx(0.0)) ++z0;
  out.assign(z0, cplx(0.0));
  c.erase(c.begin(), c.begin() + long(z0));
  int n = int(c.size()) - 1;
  if (n == 0) return out;

  const cplx lead = c.back();
  for (auto& a : c) a /= lead;
  if (n == 1) {
    out.push_back(-c[0]);
    return out;
  }

  double radius = 0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / (n - k)));
  if (radius == 0) radius = 1;

  std::vector<cplx> z(n);
  const double two_pi = 2 * std::acos(-1.0);
  for (int k = 0; k < n; ++k) z[k] = std::polar(radius, two_pi * k / n + 0.4);

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(n, false);
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      cplx pv, dpv;
      detail::horner2(c, z[i], pv, dpv);
      double scale = 0, r = std::abs(z[i]);
      for (auto it = c.rbegin(); it != c.rend(); ++it) scale = scale * r + std::abs(*it);
      if (std::abs(pv) <= 4 * eps * scale) {
        done[i] = true;
        continue;
      }
      cplx ratio = pv / dpv;
      cplx s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cplx w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      z[i] -= w;
      if (std::abs(w) <= opt.tol * std::max(std::abs(z[i]), eps)) done[i] = true;
      else all = false;
    }
    if (all) break;
  }
  for (int i = 0; i < n; ++i)
    if (!done[i]) throw Error(ErrorCode::NoConvergence, "root iteration budget of " + std::to_string(opt.max_iter) + " exceeded");
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

// Rebuild lead * prod (x - r).
inline Poly<cplx> from_roots(const std::vector<cplx>& rs, cplx lead) {
  Poly<cplx> p = Poly<cplx>::constant(lead);
  for (const auto& r : rs) p *= Poly<cplx>::linear(-r, cplx(1.0));
  return p;
}

}  // namespace midx
