#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "midx/errors.hpp"
#include "midx/scalar.hpp"

namespace midx {

// Trailing float coefficients at or below this fraction of the largest one are
// treated as noise and dropped.
inline constexpr double kTrimRelative = 1e-13;
inline constexpr double kDivRemainderRelative = 1e-9;

// Dense polynomial, coefficients lowest degree first. Degree -1 is the zero polynomial.
template <class T>
class Poly {
 public:
  using value_type = T;

  Poly() = default;
  Poly(std::initializer_list<T> c) : c_(c) { normalize(); }
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { normalize(); }

  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(const T& a, int k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = a;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }
  // a + b x
  static Poly linear(const T& a, const T& b) { return Poly(std::vector<T>{a, b}); }

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const { return (k >= 0 && k < int(c_.size())) ? c_[k] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  T operator()(const T& z) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& a : c_) m = std::max(m, magnitude(a));
    return m;
  }

  Poly operator-() const {
    std::vector<T> c(c_);
    for (auto& a : c) a = -a;
    return Poly(std::move(c));
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    normalize();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& a : c_) a *= s;
    normalize();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (midx::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void normalize() {
    if constexpr (is_exact_v<T>) {
      while (!c_.empty() && midx::is_zero(c_.back())) c_.pop_back();
    } else {
      double m = max_abs();
      while (!c_.empty() && (midx::is_zero(c_.back()) || magnitude(c_.back()) <= kTrimRelative * m)) c_.pop_back();
    }
  }

  std::vector<T> c_;
};

template <class T>
Poly<T> scale(const Poly<T>& p, const T& s) {
  return p * s;
}

// q(x) = p(x + c) by repeated synthetic division (a Taylor shift); the result is
// the binomial expansion and is exact over the rationals.
template <class T>
Poly<T> shift_arg(const Poly<T>& p, const T& c) {
  if (p.degree() <= 0 || is_zero(c)) return p;
  std::vector<T> q(p.coeffs());
  int n = int(q.size());
  for (int k = 0; k < n - 1; ++k)
    for (int j = n - 2; j >= k; --j) q[j] += c * q[j + 1];
  return Poly<T>(std::move(q));
}

template <class T>
Poly<T> star(const Poly<T>& p) {
  std::vector<T> c(p.coeffs());
  for (auto& a : c) a = conj(a);
  return Poly<T>(std::move(c));
}

template <class T>
struct DivResult {
  Poly<T> quotient;
  Poly<T> remainder;
};

template <class T>
DivResult<T> divmod(const Poly<T>& num, const Poly<T>& den) {
  if (den.is_zero()) throw Error(ErrorCode::InvalidParams, "division by the zero polynomial");
  int dn = den.degree();
  std::vector<T> r(num.coeffs());
  if (num.degree() < dn) return {Poly<T>(), num};
  std::vector<T> q(num.degree() - dn + 1, T(0));
  const T lead = den.leading();
  for (int k = num.degree() - dn; k >= 0; --k) {
    T f = r[k + dn] / lead;
    q[k] = f;
    if (is_zero(f)) continue;
    for (int j = 0; j <= dn; ++j) r[k + j] -= f * den.coeffs()[j];
    r[k + dn] = T(0);
  }
  r.resize(dn);
  return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

template <class T>
Poly<T> exact_div(const Poly<T>& num, const Poly<T>& den) {
  auto [q, r] = divmod(num, den);
  if constexpr (is_exact_v<T>) {
    if (!r.is_zero()) throw Error(ErrorCode::RemainderNonzero, "nonzero remainder of degree " + std::to_string(r.degree()));
  } else {
    double tol = kDivRemainderRelative * num.max_abs();
    if (r.max_abs() > tol)
      throw Error(ErrorCode::RemainderNonzero, "remainder magnitude " + std::to_string(r.max_abs()) +
                                                   " exceeds " + std::to_string(tol));
  }
  return q;
}

template <class T>
Poly<cplx> to_complex(const Poly<T>& p) {
  if constexpr (std::is_same_v<T, cplx>) {
    return p;
  } else {
    std::vector<cplx> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.push_back(to_cplx(a));
    return Poly<cplx>(std::move(c));
  }
}

template <class T>
Poly<T> from_exact(const Poly<QQi>& p) {
  if constexpr (is_exact_v<T>) {
    return p;
  } else {
    return to_complex(p);
  }
}

// Horner evaluation at a complex point regardless of the coefficient field.
template <class T>
cplx evaluate(const Poly<T>& p, cplx z) {
  cplx acc = 0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_cplx(*it);
  return acc;
}

// sum |c_k| |z|^k, the natural scale of rounding error in p(z).
template <class T>
double eval_scale(const Poly<T>& p, cplx z) {
  double r = std::abs(z), acc = 0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + magnitude(*it);
  return acc;
}

template <class T>
Poly<T> derivative(const Poly<T>& p) {
  if (p.degree() <= 0) return Poly<T>();
  std::vector<T> c(p.degree());
  for (int k = 1; k <= p.degree(); ++k) c[k - 1] = p.coeffs()[k] * T(k);
  return Poly<T>(std::move(c));
}

// p(q(x))
template <class T>
Poly<T> compose(const Poly<T>& p, const Poly<T>& q) {
  Poly<T> acc;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + Poly<T>::constant(*it);
  return acc;
}

template <class T>
Poly<T> pow(const Poly<T>& p, int k) {
  Poly<T> r = Poly<T>::constant(T(1));
  for (int j = 0; j < k; ++j) r *= p;
  return r;
}

// (a + b x)(a + 1 + b x)...(a + k - 1 + b x)
template <class T>
Poly<T> pochhammer_linear(const T& a, const T& b, int k) {
  Poly<T> r = Poly<T>::constant(T(1));
  for (int m = 0; m < k; ++m) r *= Poly<T>::linear(a + T(m), b);
  return r;
}

template <class T>
T pochhammer(const T& a, int k) {
  T r(1);
  for (int m = 0; m < k; ++m) r *= a + T(m);
  return r;
}

template <class T>
T factorial(int n) {
  T r(1);
  for (int m = 2; m <= n; ++m) r *= T(m);
  return r;
}

// Largest coefficientwise deviation |p_k - q_k|.
template <class T>
double max_coeff_diff(const Poly<T>& p, const Poly<T>& q) {
  int n = std::max(p.degree(), q.degree());
  double m = 0;
  for (int k = 0; k <= n; ++k) m = std::max(m, magnitude(p.coeff(k) - q.coeff(k)));
  return m;
}

template <class T>
bool is_star_real(const Poly<T>& p) {
  for (const auto& a : p.coeffs())
    if (!is_real(a)) return false;
  return true;
}

}  // namespace midx
