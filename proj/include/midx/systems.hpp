#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "midx/errors.hpp"
#include "midx/gamma.hpp"
#include "midx/poly.hpp"
#include "midx/scalar.hpp"

namespace midx {

enum class Family { ContinuousHahn, MeixnerPollaczek, Wilson, Hermite };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::ContinuousHahn: return "ch";
    case Family::MeixnerPollaczek: return "mp";
    case Family::Wilson: return "wilson";
    case Family::Hermite: return "hermite";
  }
  return "?";
}

// Parameter shift delta and the constant kappa of the shape-invariance relation.
template <class T>
struct ShiftData {
  std::vector<T> delta;
  double kappa = 1.0;
};

// Continuous Hahn, lambda = (a1, a2), gamma = 1.
template <class T>
struct ContinuousHahn {
  static constexpr Family family = Family::ContinuousHahn;
  using scalar_type = T;
  T a1, a2;

  T b1() const { return a1 + conj(a1) + a2 + conj(a2); }

  T energy(int n) const { return T(n) * (T(n) + b1() - T(1)); }
  T f(int n) const { return T(n) + b1() - T(1); }
  T b(int n) const { return T(n); }  // b_{n-1}
  ShiftData<T> shift_data() const { return {{from_ratio<T>(1, 2), from_ratio<T>(1, 2)}, 1.0}; }

  ContinuousHahn shifted(const T& d1, const T& d2) const { return {a1 + d1, a2 + d2}; }
  ContinuousHahn plus_delta() const { return shifted(from_ratio<T>(1, 2), from_ratio<T>(1, 2)); }

  Poly<T> potential() const {
    const T i = imag_unit<T>();
    return Poly<T>::linear(a1, i) * Poly<T>::linear(a2, i);
  }
  Poly<T> potential_star() const { return star(potential()); }
  cplx potential_eval(cplx z) const { return evaluate(potential(), z); }
  cplx potential_star_eval(cplx z) const { return evaluate(potential_star(), z); }

  // i^n/n! * sum_k (-n)_k (n+b1-1)_k / k! (a1+a1*+k)_{n-k} (a1+a2*+k)_{n-k} (a1+ix)_k,
  // which is the 3F2 series with the denominators cleared.
  Poly<T> poly(int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidParams, "negative degree");
    const T i = imag_unit<T>();
    const T s11 = a1 + conj(a1), s12 = a1 + conj(a2), nb = T(n) + b1() - T(1);
    Poly<T> sum;
    for (int k = 0; k <= n; ++k) {
      T c = pochhammer(T(-n), k) * pochhammer(nb, k) / factorial<T>(k) * pochhammer(s11 + T(k), n - k) *
            pochhammer(s12 + T(k), n - k);
      if (is_zero(c)) continue;
      sum += pochhammer_linear(a1, i, k) * c;
    }
    return sum * (i_pow<T>(n) / factorial<T>(n));
  }
  T leading_coeff(int n) const { return pochhammer(T(n) + b1() - T(1), n) / factorial<T>(n); }

  double norm(int n) const {
    cplx A1 = to_cplx(a1), A2 = to_cplx(a2);
    const cplx a[2] = {A1, A2};
    double lh = std::log(2 * kPi);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) lh += loggamma(double(n) + a[j] + std::conj(a[k])).real();
    double b = real_part(b1());
    lh -= log_abs_gamma(cplx(n + 1.0)) + std::log(2.0 * n + b - 1) + log_abs_gamma(cplx(n + b - 1));
    return std::exp(lh);
  }

  double groundstate_log(double x) const {
    return log_abs_gamma(to_cplx(a1) + cplx(0, x)) + log_abs_gamma(to_cplx(a2) + cplx(0, x));
  }
  // Analytic continuation of log phi0 to complex arguments (principal log-gamma sheets).
  cplx groundstate_logc(cplx z) const {
    const cplx i(0, 1), A1 = to_cplx(a1), A2 = to_cplx(a2);
    return 0.5 * (loggamma(A1 + i * z) + loggamma(A2 + i * z) + loggamma(std::conj(A1) - i * z) +
                  loggamma(std::conj(A2) - i * z));
  }

  void validate() const {
    if (!(sign_real(a1) > 0 && sign_real(a2) > 0))
      throw Error(ErrorCode::InvalidParams, "continuous Hahn needs Re a1 > 0 and Re a2 > 0");
  }
  void validate_deformable() const {
    validate();
    const T h = from_ratio<T>(1, 2);
    if (!(sign_real(a1 - h) > 0 && sign_real(a2 - h) > 0))
      throw Error(ErrorCode::InvalidParams, "deformation needs Re a1 > 1/2 and Re a2 > 1/2");
  }

  std::vector<T> values() const { return {a1, a2}; }
};

// Meixner-Pollaczek, lambda = (a, phi). The angle is carried as u = e^{i phi}, so the
// data are exact whenever u is a Gaussian rational (phi = pi/2, or 3-4-5 angles).
template <class T>
struct MeixnerPollaczek {
  static constexpr Family family = Family::MeixnerPollaczek;
  using scalar_type = T;
  T a;
  T u;

  static MeixnerPollaczek from_unit(const T& a, const T& u) { return {a, u}; }

  double phi() const {
    cplx w = to_cplx(u);
    return std::atan2(w.imag(), w.real());
  }
  T sin_phi() const { return imag_of(u); }
  T cos_phi() const { return real_of(u); }

  T energy(int n) const { return T(2 * n) * sin_phi(); }
  T f(int) const { return T(2) * sin_phi(); }
  T b(int n) const { return T(n); }
  ShiftData<T> shift_data() const { return {{from_ratio<T>(1, 2), T(0)}, 1.0}; }

  MeixnerPollaczek shifted(const T& da) const { return {a + da, u}; }
  MeixnerPollaczek plus_delta() const { return shifted(from_ratio<T>(1, 2)); }

  // V = e^{i(pi/2 - phi)} (a + ix) = i conj(u) (a + ix)
  Poly<T> potential() const {
    const T i = imag_unit<T>();
    const T w = i * conj(u);
    return Poly<T>::linear(w * a, w * i);
  }
  Poly<T> potential_star() const { return star(potential()); }
  cplx potential_eval(cplx z) const { return evaluate(potential(), z); }
  cplx potential_star_eval(cplx z) const { return evaluate(potential_star(), z); }

  // u^n/n! * sum_k (-n)_k (2a+k)_{n-k} (a+ix)_k (1 - conj(u)^2)^k / k!
  Poly<T> poly(int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidParams, "negative degree");
    const T i = imag_unit<T>();
    const T z = T(1) - conj(u) * conj(u);
    Poly<T> sum;
    T zk(1);
    for (int k = 0; k <= n; ++k) {
      T c = pochhammer(T(-n), k) * pochhammer(T(2) * a + T(k), n - k) * zk / factorial<T>(k);
      zk *= z;
      if (is_zero(c)) continue;
      sum += pochhammer_linear(a, i, k) * c;
    }
    T un(1);
    for (int k = 0; k < n; ++k) un *= u;
    return sum * (un / factorial<T>(n));
  }
  T leading_coeff(int n) const {
    T s(1);
    for (int k = 0; k < n; ++k) s *= T(2) * sin_phi();
    return s / factorial<T>(n);
  }

  double norm(int n) const {
    double A = real_part(a), s = real_part(sin_phi());
    return std::exp(std::log(2 * kPi) + log_abs_gamma(cplx(n + 2 * A)) - log_abs_gamma(cplx(n + 1.0)) - 2 * A * std::log(2 * s));
  }

  double groundstate_log(double x) const {
    return (phi() - kPi / 2) * x + log_abs_gamma(cplx(real_part(a), x));
  }
  cplx groundstate_logc(cplx z) const {
    const cplx i(0, 1), A = to_cplx(a);
    return (phi() - kPi / 2) * z + 0.5 * (loggamma(A + i * z) + loggamma(A - i * z));
  }

  void validate() const {
    if (!is_real(a)) throw Error(ErrorCode::InvalidParams, "Meixner-Pollaczek parameter a must be real");
    if (!(sign_real(a) > 0)) throw Error(ErrorCode::InvalidParams, "Meixner-Pollaczek needs a > 0");
    cplx w = to_cplx(u);
    if (!(w.imag() > 0)) throw Error(ErrorCode::InvalidParams, "Meixner-Pollaczek needs 0 < phi < pi");
    if (std::abs(std::abs(w) - 1) > 1e-12) throw Error(ErrorCode::InvalidParams, "e^{i phi} must have modulus one");
    if constexpr (is_exact_v<T>) {
      if (u * conj(u) != T(1)) throw Error(ErrorCode::InvalidParams, "e^{i phi} must have modulus one");
    }
  }
  void validate_deformable() const {
    validate();
    if (!(sign_real(a - from_ratio<T>(1, 2)) > 0)) throw Error(ErrorCode::InvalidParams, "deformation needs a > 1/2");
  }

  std::vector<T> values() const { return {a, u}; }
};

template <class T>
MeixnerPollaczek<T> mp_from_angle(const T& a, double phi) {
  static_assert(!is_exact_v<T>, "use from_unit with an exact e^{i phi}");
  return {a, std::polar(1.0, phi)};
}

// Wilson, lambda = (a1..a4) closed under conjugation; polynomials are in eta = x^2.
template <class T>
struct Wilson {
  static constexpr Family family = Family::Wilson;
  using scalar_type = T;
  std::array<T, 4> a;

  T b1() const { return a[0] + a[1] + a[2] + a[3]; }
  T energy(int n) const { return T(n) * (T(n) + b1() - T(1)); }

  cplx potential_eval(cplx z) const {
    const cplx i(0, 1);
    if (std::abs(z) < 1e-14 || std::abs(z - 0.5 * i) < 1e-14)
      throw Error(ErrorCode::PoleHit, "Wilson potential evaluated at a pole");
    cplx num = 1;
    for (const auto& aj : a) num *= to_cplx(aj) + i * z;
    return num / (2.0 * i * z * (2.0 * i * z + 1.0));
  }
  // Exact evaluation at a point of the coefficient field.
  T potential_at(const T& z) const {
    const T i = imag_unit<T>();
    T num(1);
    for (const auto& aj : a) num *= aj + i * z;
    T den = T(2) * i * z * (T(2) * i * z + T(1));
    if (is_zero(den)) throw Error(ErrorCode::PoleHit, "Wilson potential evaluated at a pole");
    return num / den;
  }

  // (a1+a2, a1+a3, a1+a4)_n 4F3(-n, n+b1-1, a1+ix, a1-ix; a1+a2, a1+a3, a1+a4; 1) in eta,
  // using (a1+ix)_k (a1-ix)_k = prod_m ((a1+m)^2 + eta).
  Poly<T> poly(int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidParams, "negative degree");
    const T nb = T(n) + b1() - T(1);
    Poly<T> sum;
    Poly<T> q = Poly<T>::constant(T(1));
    for (int k = 0; k <= n; ++k) {
      T c = pochhammer(T(-n), k) * pochhammer(nb, k) / factorial<T>(k);
      for (int j = 1; j < 4; ++j) c *= pochhammer(a[0] + a[j] + T(k), n - k);
      if (!is_zero(c)) sum += q * c;
      T am = a[0] + T(k);
      q *= Poly<T>::linear(am * am, T(1));
    }
    return sum;
  }

  double groundstate_log(double x) const {
    double s = 0;
    for (const auto& aj : a) s += log_abs_gamma(to_cplx(aj) + cplx(0, x));
    return s - log_abs_gamma(cplx(0, 2 * x));
  }

  void validate() const {
    for (const auto& aj : a)
      if (!(sign_real(aj) > 0)) throw Error(ErrorCode::InvalidParams, "Wilson needs Re a_j > 0");
    std::array<bool, 4> used{};
    for (const auto& aj : a) {
      bool found = false;
      for (int k = 0; k < 4 && !found; ++k) {
        if (used[k]) continue;
        bool eq;
        if constexpr (is_exact_v<T>) eq = conj(aj) == a[k];
        else eq = std::abs(std::conj(aj) - a[k]) <= 1e-12 * (1 + std::abs(aj));
        if (eq) used[k] = found = true;
      }
      if (!found) throw Error(ErrorCode::InvalidParams, "Wilson parameters must be closed under conjugation");
    }
  }
};

// Hermite, (2x)^n 2F0(-n/2, -(n-1)/2; ; -1/x^2).
template <class T>
struct Hermite {
  static constexpr Family family = Family::Hermite;
  using scalar_type = T;

  T energy(int n) const { return T(2 * n); }
  Poly<T> poly(int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidParams, "negative degree");
    std::vector<T> c(n + 1, T(0));
    T two_n(1);
    for (int k = 0; k < n; ++k) two_n *= T(2);
    for (int k = 0; 2 * k <= n; ++k) {
      T v = two_n * pochhammer(from_ratio<T>(-n, 2), k) * pochhammer(from_ratio<T>(-(n - 1), 2), k) / factorial<T>(k);
      if (k % 2) v = -v;
      c[n - 2 * k] = v;
    }
    return Poly<T>(std::move(c));
  }
  double groundstate_log(double x) const { return -0.5 * x * x; }
};

}  // namespace midx
