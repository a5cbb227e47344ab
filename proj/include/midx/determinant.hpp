#pragma once

#include <cmath>
#include <complex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "midx/poly.hpp"

namespace midx {

template <class T>
using PolyMatrix = std::vector<std::vector<Poly<T>>>;

// Bareiss fraction-free elimination; every division is exact.
template <class T>
Poly<T> det_bareiss(PolyMatrix<T> m) {
  const int n = int(m.size());
  if (n == 0) return Poly<T>::constant(T(1));
  int sign = 1;
  Poly<T> prev = Poly<T>::constant(T(1));
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Poly<T>();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  Poly<T> d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

// Laplace expansion over column prefixes, memoized by the set of rows used.
template <class T>
Poly<T> det_cofactor(const PolyMatrix<T>& m) {
  const int n = int(m.size());
  if (n == 0) return Poly<T>::constant(T(1));
  // f[S] = det of rows S (ascending) and the first |S| columns
  std::vector<Poly<T>> f(size_t(1) << n);
  f[0] = Poly<T>::constant(T(1));
  for (unsigned S = 1; S < (1u << n); ++S) {
    int k = __builtin_popcount(S) - 1;  // column being expanded
    Poly<T> acc;
    int pos = 0;
    for (int r = 0; r < n; ++r) {
      if (!(S & (1u << r))) continue;
      const Poly<T>& rest = f[S & ~(1u << r)];
      if (!rest.is_zero() && !m[r][k].is_zero()) {
        Poly<T> term = m[r][k] * rest;
        if ((pos + k) % 2) acc -= term;
        else acc += term;
      }
      ++pos;
    }
    f[S] = std::move(acc);
  }
  return f[(1u << n) - 1];
}

// Exact fields take the fraction-free route; float fields use the cofactor
// expansion, which never divides by a polynomial.
template <class T>
Poly<T> determinant(const PolyMatrix<T>& m) {
  if constexpr (is_exact_v<T>) {
    return det_bareiss(m);
  } else {
    return det_cofactor(m);
  }
}

// LU with partial pivoting on a numeric matrix.
inline cplx det_numeric(std::vector<std::vector<cplx>> a) {
  const int n = int(a.size());
  cplx det = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    if (a[p][k] == cplx(0.0)) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int i = k + 1; i < n; ++i) {
      cplx f = a[i][k] / a[k][k];
      for (int j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

}  // namespace midx
