#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "midx/casoratian.hpp"
#include "midx/systems.hpp"
#include "midx/virtual_states.hpp"

namespace midx {

struct LimitReport {
  std::string relation;  // e.g. "wilson->ch"
  std::string quantity;  // e.g. "P_2", "V", "E_1", "phi0", "Xi_D"
  std::vector<double> t_values;
  std::vector<double> errors;
  double fitted_rate = std::nan("");

  bool all_zero() const {
    for (double e : errors)
      if (e != 0) return false;
    return true;
  }
  bool monotone() const {
    for (size_t k = 1; k < errors.size(); ++k)
      if (!(errors[k] < errors[k - 1])) return false;
    return true;
  }
};

inline constexpr double kRateLow = -1.3, kRateHigh = -0.7;

// Identically zero ladders pass; otherwise strictly decreasing with O(1/t) slope.
inline bool ladder_ok(const LimitReport& r) {
  if (r.all_zero()) return true;
  return r.monotone() && r.fitted_rate >= kRateLow && r.fitted_rate <= kRateHigh;
}

// Least-squares slope of log(error) against log(t).
inline double fit_rate(const std::vector<double>& t, const std::vector<double>& e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!(e[i] > 0)) return std::nan("");
    double x = std::log(t[i]), y = std::log(e[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++k;
  }
  if (k < 2) return std::nan("");
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

inline const std::vector<long>& default_t_ladder() {
  static const std::vector<long> t{100, 1000, 10000};
  return t;
}

namespace detail {

template <class T>
double coeff_error(const Poly<T>& a, const Poly<T>& b) {
  return max_coeff_diff(a, b);
}

template <class T>
T tpow(const T& base, int k) {
  T r(1);
  for (int j = 0; j < k; ++j) r *= base;
  return r;
}

inline void finish(LimitReport& r) { r.fitted_rate = fit_rate(r.t_values, r.errors); }

// Fixed real sample points for the non-polynomial quantities, exact where needed.
inline std::vector<QQi> limit_samples() {
  return {QQi::ratio(-7, 4), QQi::ratio(-1, 2), QQi::ratio(1, 3), QQi::ratio(6, 5), QQi::ratio(5, 2)};
}

}  // namespace detail

// ---- Wilson -> continuous Hahn:  x^W = x + t,  lambda^W = (a1 - it, a1* + it, a2 - it, a2* + it)

template <class T>
Wilson<T> wilson_params(const ContinuousHahn<T>& l, const T& t) {
  const T it = imag_unit<T>() * t;
  return {{l.a1 - it, conj(l.a1) + it, l.a2 - it, conj(l.a2) + it}};
}

// 1/((-2t)^n n!) P^W_n((x+t)^2) against P_n(x).
template <class T>
LimitReport wilson_to_ch_poly(const ContinuousHahn<T>& l, int n, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "wilson->ch";
  r.quantity = "P_" + std::to_string(n);
  Poly<T> target = l.poly(n);
  for (long tv : ts) {
    T t(tv);
    auto w = wilson_params(l, t);
    w.validate();
    Poly<T> xt = Poly<T>::linear(t, T(1));
    Poly<T> pw = compose(w.poly(n), xt * xt);
    T s = T(1) / (detail::tpow(T(-2) * t, n) * factorial<T>(n));
    r.t_values.push_back(double(tv));
    r.errors.push_back(detail::coeff_error(pw * s, target));
  }
  detail::finish(r);
  return r;
}

template <class T>
LimitReport wilson_to_ch_energy(const ContinuousHahn<T>& l, int n, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "wilson->ch";
  r.quantity = "E_" + std::to_string(n);
  for (long tv : ts) {
    auto w = wilson_params(l, T(tv));
    r.t_values.push_back(double(tv));
    r.errors.push_back(magnitude(w.energy(n) - l.energy(n)));
  }
  detail::finish(r);
  return r;
}

template <class T>
LimitReport wilson_to_ch_potential(const ContinuousHahn<T>& l, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "wilson->ch";
  r.quantity = "V";
  for (long tv : ts) {
    T t(tv);
    auto w = wilson_params(l, t);
    double worst = 0;
    for (const auto& xq : detail::limit_samples()) {
      T x = convert<T>(xq);
      T vw = w.potential_at(x + t);
      T v = l.potential()(x);
      worst = std::max(worst, magnitude(vw - v));
    }
    r.t_values.push_back(double(tv));
    r.errors.push_back(worst);
  }
  detail::finish(r);
  return r;
}

// e^{(pi/2)(2t - Im(a1+a2))} / sqrt(2 pi (2t)^{b1-1}) phi0^W(x+t) against phi0(x), relative.
// Stirling on |Gamma(a_j^* + i(x+2t))| fixes the sign of Im(a1+a2); printed_sign = true
// uses +Im(a1+a2) instead, which leaves a constant factor e^{pi Im(a1+a2)}.
template <class T>
LimitReport wilson_to_ch_groundstate(const ContinuousHahn<T>& l, const std::vector<long>& ts = default_t_ladder(),
                                     bool printed_sign = false) {
  LimitReport r;
  r.relation = "wilson->ch";
  r.quantity = "phi0";
  const double ima = (printed_sign ? 1 : -1) * imag_part(l.a1 + l.a2), b1 = real_part(l.b1());
  for (long tv : ts) {
    const double t = double(tv);
    auto w = wilson_params(l, T(tv));
    double worst = 0;
    for (const auto& xq : detail::limit_samples()) {
      double x = real_part(xq);
      double lp = 0.5 * kPi * (ima + 2 * t) - 0.5 * std::log(2 * kPi) - 0.5 * (b1 - 1) * std::log(2 * t);
      double d = lp + w.groundstate_log(x + t) - l.groundstate_log(x);
      worst = std::max(worst, std::abs(std::expm1(d)));
    }
    r.t_values.push_back(t);
    r.errors.push_back(worst);
  }
  detail::finish(r);
  return r;
}

template <class T>
std::vector<LimitReport> wilson_to_ch(const ContinuousHahn<T>& l, int n_max, const std::vector<long>& ts = default_t_ladder()) {
  std::vector<LimitReport> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(wilson_to_ch_poly(l, n, ts));
  for (int n = 0; n <= n_max; ++n) out.push_back(wilson_to_ch_energy(l, n, ts));
  out.push_back(wilson_to_ch_potential(l, ts));
  out.push_back(wilson_to_ch_groundstate(l, ts));
  return out;
}

// Deformed Wilson -> cH. The Wilson denominator polynomial is not built here; the
// caller supplies it, per t, as a polynomial in eta.
using WilsonXiSupplier = std::function<Poly<QQi>(long t)>;

inline LimitReport wilson_to_ch_xi_hook(const ContinuousHahn<QQi>& l, const std::vector<IndexEntry>& entries,
                                        const WilsonXiSupplier& supply, const std::vector<long>& ts = default_t_ladder()) {
  auto D = validate_index_set(entries, l);
  LimitReport r;
  r.relation = "wilson->ch";
  r.quantity = "Xi_D";
  Poly<QQi> target = build_xi(D, l);
  const int M = D.M(), ell = D.ell();
  QQi dfact(1);
  for (const auto& e : D.entries()) dfact *= factorial<QQi>(e.degree);
  for (long tv : ts) {
    QQi t(tv);
    Poly<QQi> xt = Poly<QQi>::linear(t, QQi(1));
    Poly<QQi> xw = compose(supply(tv), xt * xt);
    QQi s = QQi(1) / (detail::tpow(QQi(-2) * t, ell) * dfact);
    if ((M * (M - 1) / 2) % 2) s = -s;
    r.t_values.push_back(double(tv));
    r.errors.push_back(detail::coeff_error(xw * s, target));
  }
  detail::finish(r);
  return r;
}

// ---- continuous Hahn -> Meixner-Pollaczek:  x^cH = x + t cot(phi),  lambda^cH = (a - i t cot(phi), t)

template <class T>
T cot_phi(const MeixnerPollaczek<T>& l) {
  return l.cos_phi() / l.sin_phi();
}

template <class T>
ContinuousHahn<T> ch_params(const MeixnerPollaczek<T>& l, const T& t) {
  return {l.a - imag_unit<T>() * t * cot_phi(l), t};
}

namespace detail {

template <class T>
std::vector<IndexEntry> type_one_only(const std::vector<IndexEntry>& entries) {
  for (const auto& e : entries)
    if (e.type != VType::I) throw Error(ErrorCode::TypeIIRejected, "type II virtual states have no cH -> MP limit");
  return entries;
}

}  // namespace detail

// (sin(phi)/t)^{sum d} Xi^cH_D(x^cH) against Xi_D(x), and the same with n added for P_{D,n}.
// An empty D gives the undeformed polynomial limit.
template <class T>
LimitReport ch_to_mp_poly(const MeixnerPollaczek<T>& l, const std::vector<IndexEntry>& entries, int n, bool denominator,
                          const std::vector<long>& ts = default_t_ladder()) {
  detail::type_one_only<T>(entries);
  auto Dmp = validate_index_set(entries, l);
  LimitReport r;
  r.relation = "ch->mp";
  r.quantity = denominator ? "Xi_D" : (entries.empty() ? "P_" : "P_D,") + std::to_string(n);
  Poly<T> target = denominator ? build_xi(Dmp, l) : build_p(Dmp, n, l);
  int k = Dmp.degree_sum() + (denominator ? 0 : n);
  for (long tv : ts) {
    T t(tv);
    auto ch = ch_params(l, t);
    auto D = validate_index_set(entries, ch);
    Poly<T> p = denominator ? build_xi(D, ch) : build_p(D, n, ch);
    p = shift_arg(p, t * cot_phi(l));
    T s = detail::tpow(l.sin_phi() / t, k);
    r.t_values.push_back(double(tv));
    r.errors.push_back(detail::coeff_error(p * s, target));
  }
  detail::finish(r);
  return r;
}

template <class T>
LimitReport ch_to_mp_energy(const MeixnerPollaczek<T>& l, int n, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "ch->mp";
  r.quantity = "E_" + std::to_string(n);
  for (long tv : ts) {
    T t(tv);
    auto ch = ch_params(l, t);
    r.t_values.push_back(double(tv));
    r.errors.push_back(magnitude(ch.energy(n) * l.sin_phi() / t - l.energy(n)));
  }
  detail::finish(r);
  return r;
}

template <class T>
LimitReport ch_to_mp_potential(const MeixnerPollaczek<T>& l, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "ch->mp";
  r.quantity = "V";
  for (long tv : ts) {
    T t(tv);
    auto ch = ch_params(l, t);
    Poly<T> v = shift_arg(ch.potential(), t * cot_phi(l)) * (l.sin_phi() / t);
    r.t_values.push_back(double(tv));
    r.errors.push_back(detail::coeff_error(v, l.potential()));
  }
  detail::finish(r);
  return r;
}

template <class T>
LimitReport ch_to_mp_groundstate(const MeixnerPollaczek<T>& l, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "ch->mp";
  r.quantity = "phi0";
  const double s = real_part(l.sin_phi()), c = real_part(cot_phi(l)), phi = l.phi();
  for (long tv : ts) {
    const double t = double(tv);
    auto ch = ch_params(l, T(tv));
    double worst = 0;
    for (const auto& xq : detail::limit_samples()) {
      double x = real_part(xq);
      double lp = (t - 0.5) * std::log(s / t) + t * c * (kPi / 2 - phi) + t - 0.5 * std::log(2 * kPi);
      double d = lp + ch.groundstate_log(x + t * c) - l.groundstate_log(x);
      worst = std::max(worst, std::abs(std::expm1(d)));
    }
    r.t_values.push_back(t);
    r.errors.push_back(worst);
  }
  detail::finish(r);
  return r;
}

template <class T>
std::vector<LimitReport> ch_to_mp(const MeixnerPollaczek<T>& l, const std::vector<IndexEntry>& entries, int n_max,
                                  const std::vector<long>& ts = default_t_ladder()) {
  std::vector<LimitReport> out;
  if (entries.empty()) {
    for (int n = 0; n <= n_max; ++n) out.push_back(ch_to_mp_poly(l, {}, n, false, ts));
    for (int n = 0; n <= n_max; ++n) out.push_back(ch_to_mp_energy(l, n, ts));
    out.push_back(ch_to_mp_potential(l, ts));
    out.push_back(ch_to_mp_groundstate(l, ts));
  } else {
    out.push_back(ch_to_mp_poly(l, entries, 0, true, ts));
    for (int n = 0; n <= n_max; ++n) out.push_back(ch_to_mp_poly(l, entries, n, false, ts));
  }
  return out;
}

// ---- Meixner-Pollaczek -> harmonic oscillator:  x^MP = sqrt(t) x,  lambda^MP = (t, pi/2)
// At phi = pi/2 the polynomials have definite parity, so n!/t^{n/2} p(sqrt(t) x) has
// rational coefficients.

namespace detail {

template <class T>
Poly<T> parity_rescale(const Poly<T>& p, int n, const T& t) {
  std::vector<T> c(p.degree() + 1, T(0));
  for (int k = 0; k <= p.degree(); ++k) {
    if (is_zero(p.coeff(k))) continue;
    if ((n - k) % 2) throw Error(ErrorCode::IdentityViolated, "polynomial lacks definite parity");
    int e = (n - k) / 2;  // t^{(k-n)/2} = t^{-e}
    c[k] = p.coeff(k) * factorial<T>(n) / tpow(t, e);
  }
  return Poly<T>(std::move(c));
}

}  // namespace detail

template <class T>
LimitReport mp_to_ho_poly(int n, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "mp->ho";
  r.quantity = "P_" + std::to_string(n);
  Poly<T> target = Hermite<T>{}.poly(n);
  for (long tv : ts) {
    T t(tv);
    MeixnerPollaczek<T> mp{t, imag_unit<T>()};
    r.t_values.push_back(double(tv));
    r.errors.push_back(detail::coeff_error(detail::parity_rescale(mp.poly(n), n, t), target));
  }
  detail::finish(r);
  return r;
}

// v!/t^{v/2} xi_v(sqrt(t) x) against i^{-v} H_v(ix)
template <class T>
LimitReport mp_to_ho_pseudo_virtual(int v, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "mp->ho";
  r.quantity = "xi_" + std::to_string(v);
  Poly<T> target = compose(Hermite<T>{}.poly(v), Poly<T>::monomial(imag_unit<T>(), 1)) * i_pow<T>(-v);
  for (long tv : ts) {
    T t(tv);
    MeixnerPollaczek<T> mp{t, imag_unit<T>()};
    Poly<T> xi = virtual_poly(mp, VType::I, v, false);
    r.t_values.push_back(double(tv));
    r.errors.push_back(detail::coeff_error(detail::parity_rescale(xi, v, t), target));
  }
  detail::finish(r);
  return r;
}

template <class T>
LimitReport mp_to_ho_energy(int n, const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "mp->ho";
  r.quantity = "E_" + std::to_string(n);
  for (long tv : ts) {
    MeixnerPollaczek<T> mp{T(tv), imag_unit<T>()};
    r.t_values.push_back(double(tv));
    r.errors.push_back(magnitude(mp.energy(n) - Hermite<T>{}.energy(n)));
  }
  detail::finish(r);
  return r;
}

// e^t / (sqrt(2 pi) t^{t-1/2}) phi0^MP(sqrt(t) x) against e^{-x^2/2}, relative.
template <class T>
LimitReport mp_to_ho_groundstate(const std::vector<long>& ts = default_t_ladder()) {
  LimitReport r;
  r.relation = "mp->ho";
  r.quantity = "phi0";
  for (long tv : ts) {
    const double t = double(tv);
    MeixnerPollaczek<T> mp{T(tv), imag_unit<T>()};
    double worst = 0;
    for (const auto& xq : detail::limit_samples()) {
      double x = real_part(xq);
      double lp = t - 0.5 * std::log(2 * kPi) - (t - 0.5) * std::log(t);
      double d = lp + mp.groundstate_log(std::sqrt(t) * x) - Hermite<T>{}.groundstate_log(x);
      worst = std::max(worst, std::abs(std::expm1(d)));
    }
    r.t_values.push_back(t);
    r.errors.push_back(worst);
  }
  detail::finish(r);
  return r;
}

template <class T>
std::vector<LimitReport> mp_to_ho(int n_max, int v_max, const std::vector<long>& ts = default_t_ladder()) {
  std::vector<LimitReport> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(mp_to_ho_poly<T>(n, ts));
  for (int v = 0; v <= v_max; ++v) out.push_back(mp_to_ho_pseudo_virtual<T>(v, ts));
  for (int n = 0; n <= n_max; ++n) out.push_back(mp_to_ho_energy<T>(n, ts));
  out.push_back(mp_to_ho_groundstate<T>(ts));
  return out;
}

}  // namespace midx
