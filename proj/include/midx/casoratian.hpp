#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "midx/determinant.hpp"
#include "midx/errors.hpp"
#include "midx/poly.hpp"
#include "midx/strip.hpp"
#include "midx/systems.hpp"
#include "midx/virtual_states.hpp"

namespace midx {

enum class HermiticityVerdict { ok, strip_zero, odd_degree, unknown };

inline const char* to_string(HermiticityVerdict v) {
  switch (v) {
    case HermiticityVerdict::ok: return "ok";
    case HermiticityVerdict::strip_zero: return "strip_zero";
    case HermiticityVerdict::odd_degree: return "odd_degree";
    case HermiticityVerdict::unknown: return "unknown";
  }
  return "?";
}

// Relative size below which a float leading coefficient counts as vanished.
inline constexpr double kDegenerateRelative = 1e-10;
// Coefficients above the expected degree in float mode must be this small to be dropped.
inline constexpr double kExcessRelative = 1e-8;

namespace detail {

// (-1)^{j-1} i^{1-N} (alpha - (N-1)/2 + ix)_{j-1} (alpha* - (N-1)/2 - ix)_{N-j}
template <class T>
Poly<T> r_alpha(const T& alpha, int j, int N) {
  const T i = imag_unit<T>();
  const T h = from_ratio<T>(N - 1, 2);
  Poly<T> p = pochhammer_linear(alpha - h, i, j - 1) * pochhammer_linear(conj(alpha) - h, -i, N - j);
  T c = i_pow<T>(1 - N);
  if ((j - 1) % 2) c = -c;
  return p * c;
}

// (alpha - h + ix)_j (alpha* - h - ix)_j
template <class T>
Poly<T> poch_pair(const T& alpha, const T& h, int j) {
  const T i = imag_unit<T>();
  return pochhammer_linear(alpha - h, i, j) * pochhammer_linear(conj(alpha) - h, -i, j);
}

template <class T>
Poly<T> one() {
  return Poly<T>::constant(T(1));
}

}  // namespace detail

template <class T>
Poly<T> r_factor(const ContinuousHahn<T>& l, VType t, int j, int M) {
  return detail::r_alpha(t == VType::I ? l.a1 : l.a2, j, M);
}

template <class T>
Poly<T> r_factor(const MeixnerPollaczek<T>& l, VType t, int j, int M) {
  if (t != VType::I) throw Error(ErrorCode::UnsupportedFamily, "Meixner-Pollaczek has a single twist");
  return detail::r_alpha(l.a, j, M);
}

// Weight multiplying the virtual polynomial in a column of the given type.
template <class T>
Poly<T> column_weight(const ContinuousHahn<T>& l, VType col, int j, int N) {
  return r_factor(l, col == VType::I ? VType::II : VType::I, j, N);
}
template <class T>
Poly<T> column_weight(const MeixnerPollaczek<T>&, VType, int, int) {
  return detail::one<T>();
}

template <class T>
Poly<T> z_weight(const ContinuousHahn<T>& l, int j, int N) {
  return r_factor(l, VType::I, j, N) * r_factor(l, VType::II, j, N);
}
template <class T>
Poly<T> z_weight(const MeixnerPollaczek<T>& l, int j, int N) {
  return r_factor(l, VType::I, j, N);
}

template <class T>
Poly<T> xi_denominator(const ContinuousHahn<T>& l, int MI, int MII) {
  const T h = from_ratio<T>(MI + MII - 1, 2);
  Poly<T> A = detail::one<T>();
  for (int j = 1; j < MI; ++j) A *= detail::poch_pair(l.a2, h, j);
  for (int j = 1; j < MII; ++j) A *= detail::poch_pair(l.a1, h, j);
  return A;
}
template <class T>
Poly<T> xi_denominator(const MeixnerPollaczek<T>&, int, int) {
  return detail::one<T>();
}

template <class T>
Poly<T> p_denominator(const ContinuousHahn<T>& l, int MI, int MII) {
  const T h = from_ratio<T>(MI + MII, 2);
  Poly<T> B = detail::one<T>();
  for (int j = 1; j <= MI; ++j) B *= detail::poch_pair(l.a2, h, j);
  for (int j = 1; j <= MII; ++j) B *= detail::poch_pair(l.a1, h, j);
  return B;
}
template <class T>
Poly<T> p_denominator(const MeixnerPollaczek<T>&, int, int) {
  return detail::one<T>();
}

namespace detail {

template <class T>
Poly<T> settle_degree(Poly<T> p, int expected, const char* what) {
  if constexpr (is_exact_v<T>) {
    if (p.degree() > expected)
      throw Error(ErrorCode::IdentityViolated, std::string(what) + " has degree above " + std::to_string(expected));
    if (p.degree() < expected)
      throw Error(ErrorCode::DegenerateLeadingCoeff,
                  std::string(what) + ": coefficient of x^" + std::to_string(expected) + " vanishes");
    return p;
  } else {
    double m = p.max_abs();
    std::vector<T> c(p.coeffs());
    for (int k = expected + 1; k < int(c.size()); ++k)
      if (std::abs(c[k]) > kExcessRelative * m)
        throw Error(ErrorCode::IdentityViolated, std::string(what) + " has degree above " + std::to_string(expected));
    c.resize(expected + 1, T(0));
    if (std::abs(c[expected]) <= kDegenerateRelative * m)
      throw Error(ErrorCode::DegenerateLeadingCoeff,
                  std::string(what) + ": coefficient of x^" + std::to_string(expected) + " is numerically zero");
    return Poly<T>(std::move(c));
  }
}

template <class T>
T shift_point(int N, int j) {
  return imag_unit<T>() * from_ratio<T>(N + 1 - 2 * j, 2);
}

}  // namespace detail

// Denominator polynomial Xi_D(x; lambda).
template <class Fam>
Poly<typename Fam::scalar_type> build_xi(const IndexSet& D, const Fam& l) {
  using T = typename Fam::scalar_type;
  const int M = D.M();
  if (M == 0) return detail::one<T>();
  auto cols = D.columns();
  std::vector<Poly<T>> xis;
  for (const auto& c : cols) xis.push_back(virtual_poly(l, c.type, c.degree, false));
  PolyMatrix<T> m(M, std::vector<Poly<T>>(M));
  for (int j = 1; j <= M; ++j) {
    T s = detail::shift_point<T>(M, j);
    for (int k = 0; k < M; ++k) m[j - 1][k] = column_weight(l, cols[k].type, j, M) * shift_arg(xis[k], s);
  }
  Poly<T> det = determinant(m) * i_pow<T>(M * (M - 1) / 2);
  Poly<T> xi = exact_div(det, xi_denominator(l, D.MI(), D.MII()));
  return detail::settle_degree(std::move(xi), D.ell(), "Xi_D");
}

// Multi-indexed polynomial P_{D,n}(x; lambda).
template <class Fam>
Poly<typename Fam::scalar_type> build_p(const IndexSet& D, int n, const Fam& l) {
  using T = typename Fam::scalar_type;
  if (n < 0) throw Error(ErrorCode::InvalidParams, "negative degree");
  const int M = D.M(), N = M + 1;
  auto cols = D.columns();
  std::vector<Poly<T>> xis;
  for (const auto& c : cols) xis.push_back(virtual_poly(l, c.type, c.degree, false));
  Poly<T> pn = l.poly(n);
  PolyMatrix<T> m(N, std::vector<Poly<T>>(N));
  for (int j = 1; j <= N; ++j) {
    T s = detail::shift_point<T>(N, j);
    for (int k = 0; k < M; ++k) m[j - 1][k] = column_weight(l, cols[k].type, j, N) * shift_arg(xis[k], s);
    m[j - 1][M] = z_weight(l, j, N) * shift_arg(pn, s);
  }
  Poly<T> det = determinant(m) * i_pow<T>(M * (M + 1) / 2);
  Poly<T> p = exact_div(det, p_denominator(l, D.MI(), D.MII()));
  return detail::settle_degree(std::move(p), D.ell() + n, "P_{D,n}");
}

// Shortcut for sets of a single type I: plain Casoratian of the xi's, and the
// last column weighted by r^I only; no polynomial division.
template <class Fam>
Poly<typename Fam::scalar_type> build_xi_type_one(const IndexSet& D, const Fam& l) {
  using T = typename Fam::scalar_type;
  if (D.MII() != 0) throw Error(ErrorCode::InvalidParams, "type I shortcut needs M_II = 0");
  const int M = D.M();
  if (M == 0) return detail::one<T>();
  auto cols = D.columns();
  PolyMatrix<T> m(M, std::vector<Poly<T>>(M));
  for (int k = 0; k < M; ++k) {
    Poly<T> xi = virtual_poly(l, VType::I, cols[k].degree, false);
    for (int j = 1; j <= M; ++j) m[j - 1][k] = shift_arg(xi, detail::shift_point<T>(M, j));
  }
  return detail::settle_degree(determinant(m) * i_pow<T>(M * (M - 1) / 2), D.ell(), "Xi_D");
}

template <class Fam>
Poly<typename Fam::scalar_type> build_p_type_one(const IndexSet& D, int n, const Fam& l) {
  using T = typename Fam::scalar_type;
  if (D.MII() != 0) throw Error(ErrorCode::InvalidParams, "type I shortcut needs M_II = 0");
  const int M = D.M(), N = M + 1;
  auto cols = D.columns();
  Poly<T> pn = l.poly(n);
  PolyMatrix<T> m(N, std::vector<Poly<T>>(N));
  for (int k = 0; k < M; ++k) {
    Poly<T> xi = virtual_poly(l, VType::I, cols[k].degree, false);
    for (int j = 1; j <= N; ++j) m[j - 1][k] = shift_arg(xi, detail::shift_point<T>(N, j));
  }
  for (int j = 1; j <= N; ++j) m[j - 1][M] = r_factor(l, VType::I, j, N) * shift_arg(pn, detail::shift_point<T>(N, j));
  return detail::settle_degree(determinant(m) * i_pow<T>(M * (M + 1) / 2), D.ell() + n, "P_{D,n}");
}

// Deformed system: Xi at lambda and lambda + delta, lambda^{[MI,MII]}, and the
// hermiticity verdict. Immutable once built.
template <class Fam>
class DeformedSystem {
 public:
  using T = typename Fam::scalar_type;

  DeformedSystem(const Fam& l, IndexSet D)
      : lambda_(l),
        D_(std::move(D)),
        xi_(build_xi(D_, lambda_)),
        xi_delta_(build_xi(D_, lambda_.plus_delta())),
        shifted_(bracket_params(lambda_, D_.MI(), D_.MII())) {
    if (!D_.even()) verdict_ = HermiticityVerdict::odd_degree;
    try {
      strip_ = strip_scan(xi_);
      if (verdict_ != HermiticityVerdict::odd_degree) {
        switch (strip_.verdict) {
          case StripVerdict::zero_free: verdict_ = HermiticityVerdict::ok; break;
          case StripVerdict::strip_zero: verdict_ = HermiticityVerdict::strip_zero; break;
          case StripVerdict::boundary_ambiguous: verdict_ = HermiticityVerdict::unknown; break;
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoConvergence) throw;
      if (verdict_ != HermiticityVerdict::odd_degree) verdict_ = HermiticityVerdict::unknown;
    }
  }

  const Fam& lambda() const { return lambda_; }
  const IndexSet& index_set() const { return D_; }
  const Poly<T>& xi() const { return xi_; }
  const Poly<T>& xi_delta() const { return xi_delta_; }
  const Fam& lambda_shifted() const { return shifted_; }
  HermiticityVerdict verdict() const { return verdict_; }
  const StripScanReport& strip() const { return strip_; }
  int ell() const { return D_.ell(); }

  Poly<T> p(int n) const { return build_p(D_, n, lambda_); }
  Poly<T> p_delta(int n) const { return build_p(D_, n, lambda_.plus_delta()); }

 private:
  Fam lambda_;
  IndexSet D_;
  Poly<T> xi_, xi_delta_;
  Fam shifted_;
  HermiticityVerdict verdict_ = HermiticityVerdict::unknown;
  StripScanReport strip_;
};

template <class Fam>
DeformedSystem<Fam> make_system(const Fam& l, const std::vector<IndexEntry>& entries) {
  return DeformedSystem<Fam>(l, validate_index_set(entries, l));
}

template <class Fam>
void require_admissible(const DeformedSystem<Fam>& s) {
  if (s.verdict() != HermiticityVerdict::ok)
    throw Error(ErrorCode::NotAdmissible, std::string("hermiticity verdict is ") + to_string(s.verdict()));
}

// log psi_D(x)^2
template <class Fam>
double psi_weight_log(const DeformedSystem<Fam>& s, double x) {
  require_admissible(s);
  const cplx h(0, 0.5);
  cplx prod = evaluate(s.xi(), x - h) * evaluate(s.xi(), x + h);
  if (!(prod.real() > 0) || std::abs(prod.imag()) > 1e-8 * std::abs(prod))
    throw Error(ErrorCode::NonPositiveWeight, "Xi(x-i/2) Xi(x+i/2) is not positive at x = " + std::to_string(x));
  return 2 * s.lambda_shifted().groundstate_log(x) - std::log(prod.real());
}

// V_D(z) = V(z; lambda^{[MI,MII]}) Xi(z+i/2)/Xi(z-i/2) Xi_delta(z-i)/Xi_delta(z)
template <class Fam>
cplx deformed_potential_eval(const DeformedSystem<Fam>& s, cplx z) {
  const cplx h(0, 0.5), i(0, 1);
  cplx d1 = evaluate(s.xi(), z - h), d2 = evaluate(s.xi_delta(), z);
  const double tiny = 1e-300;
  if (std::abs(d1) <= std::max(tiny, 1e-14 * eval_scale(s.xi(), z - h)) ||
      std::abs(d2) <= std::max(tiny, 1e-14 * eval_scale(s.xi_delta(), z)))
    throw Error(ErrorCode::DenominatorZero, "Xi vanishes at a denominator point");
  return s.lambda_shifted().potential_eval(z) * evaluate(s.xi(), z + h) / d1 * evaluate(s.xi_delta(), z - i) / d2;
}

using ComplexFn = std::function<cplx(cplx)>;

// i^{n(n-1)/2} det(f_k(x_j)), x_j = x + i((n+1)/2 - j) gamma
inline cplx casoratian_numeric(const std::vector<ComplexFn>& fs, cplx x, double gamma = 1.0) {
  const int n = int(fs.size());
  if (n == 0) return 1.0;
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
  for (int j = 1; j <= n; ++j) {
    cplx xj = x + cplx(0, 0.5 * (n + 1 - 2 * j) * gamma);
    for (int k = 0; k < n; ++k) a[j - 1][k] = fs[k](xj);
  }
  return det_numeric(std::move(a)) * i_pow<cplx>(n * (n - 1) / 2);
}

// ---- raw Casoratian forms, evaluated from the wavefunctions themselves

template <class Fam>
std::vector<ComplexFn> virtual_wavefunctions(const DeformedSystem<Fam>& s) {
  std::vector<ComplexFn> fs;
  for (const auto& c : s.index_set().columns()) {
    auto tw = twist(s.lambda(), c.type);
    Poly<cplx> xi = to_complex(virtual_poly(s.lambda(), c.type, c.degree, false));
    fs.push_back([tw, xi](cplx z) { return std::exp(tw.groundstate_logc(z)) * xi(z); });
  }
  return fs;
}

template <class Fam>
ComplexFn eigenfunction(const Fam& l, int n) {
  Poly<cplx> p = to_complex(l.poly(n));
  return [l, p](cplx z) { return std::exp(l.groundstate_logc(z)) * p(z); };
}

// V_D from the Casoratians of the seed wavefunctions, principal square root.
template <class Fam>
cplx vd_raw(const DeformedSystem<Fam>& s, cplx x) {
  const int M = s.index_set().M();
  const cplx i(0, 1);
  const auto& l = s.lambda();
  auto fs = virtual_wavefunctions(s);
  auto gs = fs;
  gs.push_back(eigenfunction(l, 0));
  cplx pre = std::sqrt(l.potential_eval(x - i * (0.5 * M)) * l.potential_star_eval(x - i * (0.5 * (M + 2))));
  return pre * casoratian_numeric(fs, x + 0.5 * i) / casoratian_numeric(fs, x - 0.5 * i) *
         casoratian_numeric(gs, x - i) / casoratian_numeric(gs, x);
}

// phi_{D,n} from the Casoratians, principal square roots.
template <class Fam>
cplx phi_dn_raw(const DeformedSystem<Fam>& s, int n, cplx x) {
  const int M = s.index_set().M();
  const cplx i(0, 1);
  const auto& l = s.lambda();
  auto fs = virtual_wavefunctions(s);
  auto gs = fs;
  gs.push_back(eigenfunction(l, n));
  cplx vv = 1;
  for (int j = 0; j < M; ++j)
    vv *= l.potential_eval(x + i * (0.5 * M - j)) * l.potential_star_eval(x - i * (0.5 * M - j));
  cplx inner = std::sqrt(vv) / (casoratian_numeric(fs, x - 0.5 * i) * casoratian_numeric(fs, x + 0.5 * i));
  return casoratian_numeric(gs, x) * std::sqrt(inner);
}

// psi_D(x) P_{D,n}(x)
template <class Fam>
double phi_dn_factored(const DeformedSystem<Fam>& s, const Poly<typename Fam::scalar_type>& pdn, double x) {
  return std::exp(0.5 * psi_weight_log(s, x)) * evaluate(pdn, cplx(x)).real();
}

}  // namespace midx
