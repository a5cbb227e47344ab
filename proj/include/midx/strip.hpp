#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "midx/roots.hpp"

namespace midx {

enum class StripVerdict { zero_free, strip_zero, boundary_ambiguous };

inline const char* to_string(StripVerdict v) {
  switch (v) {
    case StripVerdict::zero_free: return "zero_free";
    case StripVerdict::strip_zero: return "strip_zero";
    case StripVerdict::boundary_ambiguous: return "boundary_ambiguous";
  }
  return "?";
}

inline constexpr double kStripMargin = 1e-6;

struct StripScanReport {
  std::vector<cplx> roots;
  double min_abs_im = std::numeric_limits<double>::infinity();
  double strip_halfwidth = 0.5;
  StripVerdict verdict = StripVerdict::zero_free;
};

// Locates the zeros of Xi relative to the closed strip |Im x| <= gamma/2.
template <class T>
StripScanReport strip_scan(const Poly<T>& xi, double gamma = 1.0) {
  StripScanReport rep;
  rep.strip_halfwidth = gamma / 2;
  if (xi.degree() <= 0) return rep;
  rep.roots = roots(xi);
  bool ambiguous = false, inside = false;
  for (const auto& r : rep.roots) {
    double im = std::abs(r.imag());
    rep.min_abs_im = std::min(rep.min_abs_im, im);
    if (std::abs(im - rep.strip_halfwidth) <= kStripMargin) ambiguous = true;
    else if (im < rep.strip_halfwidth) inside = true;
  }
  if (inside) rep.verdict = StripVerdict::strip_zero;
  else if (ambiguous) rep.verdict = StripVerdict::boundary_ambiguous;
  return rep;
}

}  // namespace midx
