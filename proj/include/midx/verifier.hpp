#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "midx/casoratian.hpp"
#include "midx/roots.hpp"

namespace midx {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string check;
  CheckStatus status = CheckStatus::pass;
  double residual = 0;
  std::string detail{};

  bool ok() const { return status != CheckStatus::fail; }
};

inline bool all_ok(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.ok(); });
}

// Throws IdentityViolated (or InterlacingViolated) for the first failing result.
inline void enforce(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.ok())
      throw Error(r.check.rfind("interlace", 0) == 0 ? ErrorCode::InterlacingViolated : ErrorCode::IdentityViolated,
                  r.check + ": " + r.detail);
}

// Coefficientwise tolerance for float-mode polynomial identities.
inline constexpr double kIdentityRelative = 1e-9;
// A root is real when |Im r| <= this * (1 + |r|).
inline constexpr double kRealRootRelative = 1e-8;
// Factored against raw forms, relative.
inline constexpr double kRawFormRelative = 1e-8;

// Process-wide tolerances, overridable from the command line.
struct Tolerances {
  double identity = kIdentityRelative;
  double real_root = kRealRootRelative;
  double raw_form = kRawFormRelative;
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

namespace detail {

// Compares two polynomials; exact fields demand equality.
template <class T>
CheckResult compare_polys(std::string name, const Poly<T>& lhs, const Poly<T>& rhs, double term_scale = 0) {
  CheckResult r;
  r.check = std::move(name);
  Poly<T> d = lhs - rhs;
  // term_scale: size of the terms that cancel inside lhs or rhs, when one side may vanish
  double scale = std::max({lhs.max_abs(), rhs.max_abs(), term_scale, 1e-300});
  int worst = -1;
  double wv = 0;
  for (int k = 0; k <= d.degree(); ++k) {
    double v = magnitude(d.coeff(k));
    if (v > wv) wv = v, worst = k;
  }
  r.residual = wv / scale;
  bool good = is_exact_v<T> ? d.is_zero() : r.residual <= tolerances().identity;
  if (!good) {
    r.status = CheckStatus::fail;
    std::ostringstream os;
    os << "max relative residual " << r.residual << " at coefficient of x^" << worst;
    r.detail = os.str();
  }
  return r;
}

template <class T>
CheckResult compare_scalars(std::string name, const T& got, const T& want) {
  CheckResult r;
  r.check = std::move(name);
  double scale = std::max({magnitude(got), magnitude(want), 1e-300});
  r.residual = magnitude(got - want) / scale;
  bool good;
  if constexpr (is_exact_v<T>) good = got == want;
  else good = r.residual <= tolerances().identity;
  if (!good) {
    r.status = CheckStatus::fail;
    std::ostringstream os;
    os << "got " << to_cplx(got) << ", closed form " << to_cplx(want);
    r.detail = os.str();
  }
  return r;
}

inline CheckResult from_error(std::string name, const Error& e) {
  CheckResult r;
  r.check = std::move(name);
  r.status = CheckStatus::fail;
  r.residual = std::numeric_limits<double>::infinity();
  r.detail = e.what();
  return r;
}

template <class T>
Poly<T> sh(const Poly<T>& p, long num, long den) {
  return shift_arg(p, imag_unit<T>() * from_ratio<T>(num, den));
}

inline std::string nstr(const char* base, int n) { return std::string(base) + "[n=" + std::to_string(n) + "]"; }

}  // namespace detail

// H~_D P = E_n P with every Xi denominator cleared:
//   V' Xi(x+i/2)^2 [Xd(x) P(x-i) - Xd(x-i) P(x)] + V'* Xi(x-i/2)^2 [Xd(x) P(x+i) - Xd(x+i) P(x)]
//     = E_n Xi(x-i/2) Xi(x+i/2) Xd(x) P(x)
// where V' = V(.; lambda^{[MI,MII]}) and Xd = Xi at lambda + delta.
template <class Fam>
CheckResult eigencheck(const DeformedSystem<Fam>& s, int n) {
  using T = typename Fam::scalar_type;
  using detail::sh;
  std::string name = detail::nstr("eigen", n);
  try {
    const auto& xi = s.xi();
    const auto& xd = s.xi_delta();
    Poly<T> v = s.lambda_shifted().potential(), vs = star(v);
    Poly<T> p = s.p(n);
    Poly<T> xp = sh(xi, 1, 2), xm = sh(xi, -1, 2);
    Poly<T> t1 = v * xp * xp * xd * sh(p, -1, 1), t2 = v * xp * xp * sh(xd, -1, 1) * p;
    Poly<T> t3 = vs * xm * xm * xd * sh(p, 1, 1), t4 = vs * xm * xm * sh(xd, 1, 1) * p;
    Poly<T> lhs = t1 - t2 + t3 - t4;
    Poly<T> rhs = xm * xp * xd * p * s.lambda().energy(n);
    double scale = std::max({t1.max_abs(), t2.max_abs(), t3.max_abs(), t4.max_abs()});
    return detail::compare_polys(name, lhs, rhs, scale);
  } catch (const Error& e) {
    return detail::from_error(name, e);
  }
}

// F_D P_{D,n}(lambda) = f_n P_{D,n-1}(lambda+delta) and
// B_D P_{D,n-1}(lambda+delta) = b_{n-1} P_{D,n}(lambda), both times their Xi denominator.
template <class Fam>
std::vector<CheckResult> shift_op_check(const DeformedSystem<Fam>& s, int n) {
  using T = typename Fam::scalar_type;
  using detail::sh;
  std::vector<CheckResult> out;
  if (n < 1) {
    out.push_back({detail::nstr("forward", n), CheckStatus::skipped, 0, "needs n >= 1"});
    return out;
  }
  const T i = imag_unit<T>();
  const auto& l = s.lambda();
  try {
    Poly<T> p = s.p(n), pd = s.p_delta(n - 1);
    const auto& xi = s.xi();
    const auto& xd = s.xi_delta();
    Poly<T> f1 = sh(xd, 1, 2) * sh(p, -1, 2), f2 = sh(xd, -1, 2) * sh(p, 1, 2);
    Poly<T> f_lhs = (f1 - f2) * i;
    Poly<T> f_rhs = xi * pd * l.f(n);
    out.push_back(detail::compare_polys(detail::nstr("forward", n), f_lhs, f_rhs, std::max(f1.max_abs(), f2.max_abs())));
    Poly<T> v = s.lambda_shifted().potential(), vs = star(v);
    Poly<T> b1 = v * sh(xi, 1, 2) * sh(pd, -1, 2), b2 = vs * sh(xi, -1, 2) * sh(pd, 1, 2);
    Poly<T> b_lhs = (b1 - b2) * (-i);
    Poly<T> b_rhs = xd * p * l.b(n);
    out.push_back(detail::compare_polys(detail::nstr("backward", n), b_lhs, b_rhs, std::max(b1.max_abs(), b2.max_abs())));
  } catch (const Error& e) {
    out.push_back(detail::from_error(detail::nstr("shift", n), e));
  }
  return out;
}

// ---- closed forms for leading coefficients and the special-degree identities

template <class T>
T xi_leading_closed(const ContinuousHahn<T>& l, const IndexSet& D) {
  auto dI = D.degrees(VType::I), dII = D.degrees(VType::II);
  T c(1);
  auto tI = twist(l, VType::I), tII = twist(l, VType::II);
  for (int d : dI) c *= tI.leading_coeff(d);
  for (int d : dII) c *= tII.leading_coeff(d);
  for (size_t j = 0; j < dI.size(); ++j)
    for (size_t k = j + 1; k < dI.size(); ++k) c *= T(dI[k] - dI[j]);
  for (size_t j = 0; j < dII.size(); ++j)
    for (size_t k = j + 1; k < dII.size(); ++k) c *= T(dII[k] - dII[j]);
  T A1 = l.a1 + conj(l.a1), A2 = l.a2 + conj(l.a2);
  for (int d1 : dI)
    for (int d2 : dII) c *= A1 - T(d1) - A2 + T(d2);
  return c;
}

template <class T>
T p_leading_closed(const ContinuousHahn<T>& l, const IndexSet& D, int n) {
  T A1 = l.a1 + conj(l.a1), A2 = l.a2 + conj(l.a2);
  T c = xi_leading_closed(l, D) * l.leading_coeff(n);
  for (int d : D.degrees(VType::I)) c *= -A1 - T(n) + T(d) + T(1);
  for (int d : D.degrees(VType::II)) c *= -A2 - T(n) + T(d) + T(1);
  return c;
}

template <class T>
T p0_factor_closed(const ContinuousHahn<T>& l, const IndexSet& D) {
  T A1 = l.a1 + conj(l.a1), A2 = l.a2 + conj(l.a2);
  T c(1);
  for (int d : D.degrees(VType::I)) c *= -A1 + T(d) + T(1);
  for (int d : D.degrees(VType::II)) c *= -A2 + T(d) + T(1);
  return c;
}

template <class T>
T xi_leading_closed(const MeixnerPollaczek<T>& l, const IndexSet& D) {
  auto d = D.degrees(VType::I);
  auto t = twist(l, VType::I);
  T c(1);
  for (int v : d) c *= t.leading_coeff(v);
  for (size_t j = 0; j < d.size(); ++j)
    for (size_t k = j + 1; k < d.size(); ++k) c *= T(d[k] - d[j]);
  return c;
}

template <class T>
T p_leading_closed(const MeixnerPollaczek<T>& l, const IndexSet& D, int n) {
  T c = xi_leading_closed(l, D) * l.leading_coeff(n);
  for (int v : D.degrees(VType::I)) c *= -T(2) * l.a - T(n) + T(v) + T(1);
  return c;
}

template <class T>
T p0_factor_closed(const MeixnerPollaczek<T>& l, const IndexSet& D) {
  T c(1);
  for (int v : D.degrees(VType::I)) c *= -T(2) * l.a + T(v) + T(1);
  return c;
}

// Data of a degree-0 reduction: P_{D,n}(lambda) = factor * P_{D',n}(lambda').
template <class Fam>
struct Reduction {
  IndexSet D_prime;
  Fam lambda_prime;
  typename Fam::scalar_type factor;
};

// The identities are stated with the zero entry in the last slot of its type; the
// canonical order has it first, a cyclic move of sign (-1)^{m-1}, m the count of that type.
template <class T>
Reduction<ContinuousHahn<T>> zero_reduction(const ContinuousHahn<T>& l, const IndexSet& D, VType type, int n) {
  auto dI = D.degrees(VType::I), dII = D.degrees(VType::II);
  auto& dz = type == VType::I ? dI : dII;
  auto& other = type == VType::I ? dII : dI;
  if (dz.empty() || *std::min_element(dz.begin(), dz.end()) != 0)
    throw Error(ErrorCode::InvalidParams, "reduction needs a degree-0 entry of that type");
  const int M = D.M(), MI = D.MI(), MII = D.MII();
  T A1 = l.a1 + conj(l.a1), A2 = l.a2 + conj(l.a2);
  const T& Az = type == VType::I ? A1 : A2;
  const T& Ao = type == VType::I ? A2 : A1;
  // stated-order list: the nonzero degrees keep canonical order, zero moved last
  std::vector<int> rest;
  for (int d : dz)
    if (d != 0) rest.push_back(d);
  T c = Az + T(n) - T(1);
  // type I carries (-1)^{M_I}, type II (-1)^M as printed
  int sgn_exp = type == VType::I ? MI : M;
  if (sgn_exp % 2) c = -c;
  for (int d : rest) c *= -Az + Ao + T(d) + T(1);
  for (int d : other) c *= T(d + 1);
  int m = type == VType::I ? MI : MII;
  if ((m - 1) % 2) c = -c;
  std::vector<IndexEntry> e;
  std::vector<int> newz, newo;
  for (int d : rest) newz.push_back(d - 1);
  for (int d : other) newo.push_back(d + 1);
  const auto& nI = type == VType::I ? newz : newo;
  const auto& nII = type == VType::I ? newo : newz;
  for (int d : nI) e.push_back({VType::I, d});
  for (int d : nII) e.push_back({VType::II, d});
  return {IndexSet::ordered(std::move(e)), add_delta_tilde(l, type), c};
}

template <class T>
Reduction<MeixnerPollaczek<T>> zero_reduction(const MeixnerPollaczek<T>& l, const IndexSet& D, VType type, int n) {
  if (type != VType::I) throw Error(ErrorCode::UnsupportedFamily, "Meixner-Pollaczek has a single twist");
  auto d = D.degrees(VType::I);
  if (d.empty() || *std::min_element(d.begin(), d.end()) != 0)
    throw Error(ErrorCode::InvalidParams, "reduction needs a degree-0 entry");
  const int M = D.M();
  T c = T(2) * l.a + T(n) - T(1);
  if (M % 2) c = -c;
  for (int k = 0; k < M - 1; ++k) c *= T(2) * l.sin_phi();
  if ((M - 1) % 2) c = -c;
  std::vector<IndexEntry> e;
  for (int v : d)
    if (v != 0) e.push_back({VType::I, v - 1});
  return {IndexSet::ordered(std::move(e)), add_delta_tilde(l, VType::I), c};
}

template <class Fam>
std::vector<CheckResult> closed_form_identities(const DeformedSystem<Fam>& s, int n_max) {
  std::vector<CheckResult> out;
  const auto& l = s.lambda();
  const auto& D = s.index_set();
  auto guard = [&](const std::string& name, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      out.push_back(detail::from_error(name, e));
    }
  };
  guard("leading_xi", [&] { out.push_back(detail::compare_scalars("leading_xi", s.xi().coeff(s.ell()), xi_leading_closed(l, D))); });
  for (int n = 0; n <= n_max; ++n) {
    auto name = detail::nstr("leading_p", n);
    guard(name, [&] { out.push_back(detail::compare_scalars(name, s.p(n).coeff(s.ell() + n), p_leading_closed(l, D, n))); });
  }
  guard("p0_vs_xi_delta", [&] { out.push_back(detail::compare_polys("p0_vs_xi_delta", s.p(0), s.xi_delta() * p0_factor_closed(l, D))); });
  for (VType t : {VType::I, VType::II}) {
    if (t == VType::II && Fam::family == Family::MeixnerPollaczek) continue;
    auto d = D.degrees(t);
    if (d.empty() || *std::min_element(d.begin(), d.end()) != 0) continue;
    for (int n = 0; n <= n_max; ++n) {
      auto name = detail::nstr(t == VType::I ? "zero_reduction_I" : "zero_reduction_II", n);
      guard(name, [&] {
        auto red = zero_reduction(l, D, t, n);
        out.push_back(detail::compare_polys(name, s.p(n), build_p(red.D_prime, n, red.lambda_prime) * red.factor));
      });
    }
  }
  if (D.MII() == 0 && D.M() > 0) {
    guard("type_one_xi", [&] { out.push_back(detail::compare_polys("type_one_xi", build_xi_type_one(D, l), s.xi())); });
    for (int n = 0; n <= n_max; ++n) {
      auto name = detail::nstr("type_one_p", n);
      guard(name, [&] { out.push_back(detail::compare_polys(name, build_p_type_one(D, n, l), s.p(n))); });
    }
  }
  return out;
}

// Xi and P built in the caller's order differ from the canonical ones by the recorded sign.
template <class Fam>
std::vector<CheckResult> permutation_check(const Fam& l, const std::vector<IndexEntry>& user_order, int n) {
  using T = typename Fam::scalar_type;
  auto canon = validate_index_set(user_order, l);
  auto raw = IndexSet::ordered(user_order);
  T sg(canon.sign());
  std::vector<CheckResult> out;
  out.push_back(detail::compare_polys("permutation_xi", build_xi(raw, l), build_xi(canon, l) * sg));
  out.push_back(detail::compare_polys(detail::nstr("permutation_p", n), build_p(raw, n, l), build_p(canon, n, l) * sg));
  return out;
}

// Roots of P_{D,n}: n real ones interlacing those of P_{D,n+1}, and ell non-real ones.
template <class Fam>
std::vector<CheckResult> interlace_check(const DeformedSystem<Fam>& s, int n_max) {
  require_admissible(s);
  std::vector<CheckResult> out;
  std::vector<double> prev;
  for (int n = 0; n <= n_max; ++n) {
    CheckResult r;
    r.check = detail::nstr("interlace", n);
    std::vector<cplx> rs;
    try {
      rs = roots(s.p(n));
    } catch (const Error& e) {
      out.push_back(detail::from_error(r.check, e));
      prev.clear();
      continue;
    }
    std::vector<double> re;
    int nonreal = 0;
    double worst_im = 0;
    for (const auto& z : rs) {
      double rel = std::abs(z.imag()) / (1 + std::abs(z));
      if (rel <= tolerances().real_root) {
        re.push_back(z.real());
        worst_im = std::max(worst_im, rel);
      } else {
        ++nonreal;
      }
    }
    std::sort(re.begin(), re.end());
    std::ostringstream os;
    if (int(re.size()) != n || nonreal != s.ell()) {
      os << re.size() << " real and " << nonreal << " non-real roots, expected " << n << " and " << s.ell();
    } else if (n > 0) {
      // the n-1 previous roots must sit strictly between consecutive current ones
      for (size_t k = 0; k < prev.size(); ++k)
        if (!(re[k] < prev[k] && prev[k] < re[k + 1])) {
          os << "root " << prev[k] << " of degree n-1 not inside (" << re[k] << ", " << re[k + 1] << ")";
          break;
        }
      for (size_t k = 0; k + 1 < re.size() && os.str().empty(); ++k)
        if (!(re[k] < re[k + 1])) os << "repeated real root " << re[k];
    }
    r.residual = worst_im;
    if (!os.str().empty()) {
      r.status = CheckStatus::fail;
      std::ostringstream roots_os;
      roots_os << os.str() << "; real roots:";
      for (double v : re) roots_os << " " << v;
      r.detail = roots_os.str();
    }
    out.push_back(r);
    prev = re;
  }
  return out;
}

// ---- virtual states solve the original equation

template <class Fam>
std::vector<CheckResult> virtual_state_check(const Fam& l, VType t, int v) {
  using T = typename Fam::scalar_type;
  using detail::sh;
  std::vector<CheckResult> out;
  auto tw = twist(l, t);
  Poly<T> V = l.potential(), Vs = star(V), W = tw.potential(), Ws = star(W);
  out.push_back(detail::compare_polys("twist_product", V * sh(Vs, -1, 1), W * sh(Ws, -1, 1)));
  out.push_back(detail::compare_polys("twist_sum", V + Vs, W + Ws - Poly<T>::constant(alpha_prime(l, t))));
  Poly<T> xi = virtual_poly(l, t, v, false);
  Poly<T> lhs = W * (sh(xi, -1, 1) - xi) + Ws * (sh(xi, 1, 1) - xi);
  out.push_back(detail::compare_polys("virtual_eigen[v=" + std::to_string(v) + "]", lhs, xi * tw.energy(v)));
  out.push_back(detail::compare_scalars("virtual_energy[v=" + std::to_string(v) + "]", virtual_energy(l, t, v),
                                        tw.energy(v) + alpha_prime(l, t)));
  return out;
}

// ---- raw Casoratian forms against the factored ones

// Sample points on the real line, kept away from the poles of the gamma factors.
inline std::vector<double> sample_points(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> xs;
  while (int(xs.size()) < count) xs.push_back(u(rng));
  return xs;
}

// The raw forms carry square roots; the branch is fixed pointwise by the best of
// the allowed unit factors.
template <class Fam>
std::vector<CheckResult> raw_form_check(const DeformedSystem<Fam>& s, int n, int points = 20, unsigned seed = 7) {
  std::vector<CheckResult> out;
  auto xs = sample_points(points, seed);
  CheckResult rv{"raw_potential"}, rp{detail::nstr("raw_eigenfunction", n)};
  const std::array<cplx, 4> units{cplx(1), cplx(-1), cplx(0, 1), cplx(0, -1)};
  try {
    auto pdn = s.p(n);
    for (double x : xs) {
      cplx a = vd_raw(s, x), b = deformed_potential_eval(s, x);
      double e = std::min(std::abs(a - b), std::abs(a + b)) / std::abs(b);
      rv.residual = std::max(rv.residual, e);
      if (s.verdict() == HermiticityVerdict::ok) {
        cplx c = phi_dn_raw(s, n, x);
        double f = phi_dn_factored(s, pdn, x);
        double best = std::numeric_limits<double>::infinity();
        for (auto w : units) best = std::min(best, std::abs(c - w * f));
        rp.residual = std::max(rp.residual, best / std::max(std::abs(f), 1e-300));
      }
    }
  } catch (const Error& e) {
    rv.status = CheckStatus::fail;
    rv.detail = e.what();
  }
  if (rv.residual > tolerances().raw_form) rv.status = CheckStatus::fail, rv.detail = "relative deviation " + std::to_string(rv.residual);
  out.push_back(rv);
  if (s.verdict() != HermiticityVerdict::ok) {
    rp.status = CheckStatus::skipped;
    rp.detail = "psi_D needs a zero-free Xi";
  } else if (rp.residual > tolerances().raw_form) {
    rp.status = CheckStatus::fail;
    rp.detail = "relative deviation " + std::to_string(rp.residual);
  }
  out.push_back(rp);
  return out;
}

inline CheckResult strip_check(const StripScanReport& rep, HermiticityVerdict v) {
  CheckResult r;
  r.check = "strip_scan";
  r.residual = rep.min_abs_im;
  std::ostringstream os;
  if (v == HermiticityVerdict::odd_degree) os << "odd ell_D = " << rep.roots.size() << ", ";
  os << "verdict " << to_string(v) << ", min |Im root| " << rep.min_abs_im;
  r.detail = os.str();
  if (v != HermiticityVerdict::ok) r.status = CheckStatus::fail;
  return r;
}

}  // namespace midx
