#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "midx/errors.hpp"

namespace midx {

using cplx = std::complex<double>;

// Gaussian rational: re + i*im with both parts exact rationals.
class QQi {
 public:
  QQi() : re_(0), im_(0) {}
  QQi(int re) : re_(re), im_(0) {}
  QQi(long re) : re_(re), im_(0) {}
  QQi(mpq_class re) : re_(std::move(re)), im_(0) {}
  QQi(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static QQi ratio(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return QQi(r);
  }
  static QQi i() { return QQi(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  cplx to_cplx() const { return {re_.get_d(), im_.get_d()}; }

  QQi operator-() const { return QQi(mpq_class(-re_), mpq_class(-im_)); }
  QQi& operator+=(const QQi& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  QQi& operator-=(const QQi& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  QQi& operator*=(const QQi& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  QQi& operator/=(const QQi& o) {
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    if (sgn(n) == 0) throw Error(ErrorCode::DenominatorZero, "division of Gaussian rational by zero");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend QQi operator+(QQi a, const QQi& b) { return a += b; }
  friend QQi operator-(QQi a, const QQi& b) { return a -= b; }
  friend QQi operator*(QQi a, const QQi& b) { return a *= b; }
  friend QQi operator/(QQi a, const QQi& b) { return a /= b; }
  friend bool operator==(const QQi& a, const QQi& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const QQi& a, const QQi& b) { return !(a == b); }

  std::string str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string s = sgn(re_) == 0 ? "" : re_.get_str();
    if (sgn(im_) > 0 && !s.empty()) s += "+";
    return s + im_.get_str() + "i";
  }

 private:
  mpq_class re_, im_;
};

inline QQi conj(const QQi& z) { return QQi(z.re(), mpq_class(-z.im())); }

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, QQi>;

inline bool is_zero(const QQi& z) { return z.is_zero(); }
inline bool is_zero(const cplx& z) { return z == cplx(0.0); }
inline double magnitude(const QQi& z) { return std::abs(z.to_cplx()); }
inline double magnitude(const cplx& z) { return std::abs(z); }
inline cplx to_cplx(const QQi& z) { return z.to_cplx(); }
inline cplx to_cplx(const cplx& z) { return z; }
inline double real_part(const QQi& z) { return z.re().get_d(); }
inline double real_part(const cplx& z) { return z.real(); }
inline double imag_part(const QQi& z) { return z.im().get_d(); }
inline double imag_part(const cplx& z) { return z.imag(); }

template <class T>
T from_ratio(long p, long q) {
  if constexpr (is_exact_v<T>) {
    return QQi::ratio(p, q);
  } else {
    return T(double(p) / double(q));
  }
}

template <class T>
T imag_unit() {
  if constexpr (is_exact_v<T>) {
    return QQi::i();
  } else {
    return T(0.0, 1.0);
  }
}

// i^k for any integer k.
template <class T>
T i_pow(long k) {
  long r = ((k % 4) + 4) % 4;
  switch (r) {
    case 0: return T(1);
    case 1: return imag_unit<T>();
    case 2: return T(-1);
    default: return -imag_unit<T>();
  }
}

template <class T>
T real_of(const T& z) {
  if constexpr (is_exact_v<T>) {
    return QQi(z.re());
  } else {
    return T(z.real());
  }
}

template <class T>
T imag_of(const T& z) {
  if constexpr (is_exact_v<T>) {
    return QQi(z.im());
  } else {
    return T(z.imag());
  }
}

template <class T>
T convert(const QQi& z) {
  if constexpr (is_exact_v<T>) {
    return z;
  } else {
    return z.to_cplx();
  }
}

// Sign of the real part; exact for Gaussian rationals.
inline int sign_real(const QQi& z) { return sgn(z.re()); }
inline int sign_real(const cplx& z) { return (z.real() > 0) - (z.real() < 0); }

// Largest integer strictly less than Re z, so [3]' = 2 and [2.5]' = 2.
inline long strict_floor_real(const QQi& z) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), z.re().get_num_mpz_t(), z.re().get_den_mpz_t());
  if (mpq_class(f) == z.re()) f -= 1;
  return f.get_si();
}
inline long strict_floor_real(const cplx& z) { return long(std::ceil(z.real())) - 1; }

inline bool is_real(const QQi& z) { return sgn(z.im()) == 0; }
inline bool is_real(const cplx& z) { return z.imag() == 0.0; }

// Runtime scalar used at configuration boundaries. Arithmetic between an exact
// and a float operand drops to float and marks the result as demoted.
class ComplexScalar {
 public:
  enum class Mode { exact, floating };

  ComplexScalar() : v_(QQi()) {}
  ComplexScalar(QQi q) : v_(std::move(q)) {}
  ComplexScalar(cplx z, bool demoted = false) : v_(z), demoted_(demoted) {}

  Mode mode() const { return std::holds_alternative<QQi>(v_) ? Mode::exact : Mode::floating; }
  bool is_exact() const { return mode() == Mode::exact; }
  bool demoted() const { return demoted_; }

  const QQi& exact() const {
    if (!is_exact()) throw Error(ErrorCode::InvalidParams, "scalar is not exact");
    return std::get<QQi>(v_);
  }
  cplx value() const { return is_exact() ? std::get<QQi>(v_).to_cplx() : std::get<cplx>(v_); }

  ComplexScalar conj() const {
    if (is_exact()) return ComplexScalar(midx::conj(exact()));
    return ComplexScalar(std::conj(value()), demoted_);
  }

  friend ComplexScalar operator+(const ComplexScalar& a, const ComplexScalar& b) {
    return combine(a, b, [](auto x, auto y) { return x + y; });
  }
  friend ComplexScalar operator-(const ComplexScalar& a, const ComplexScalar& b) {
    return combine(a, b, [](auto x, auto y) { return x - y; });
  }
  friend ComplexScalar operator*(const ComplexScalar& a, const ComplexScalar& b) {
    return combine(a, b, [](auto x, auto y) { return x * y; });
  }
  friend ComplexScalar operator/(const ComplexScalar& a, const ComplexScalar& b) {
    return combine(a, b, [](auto x, auto y) { return x / y; });
  }

  std::string str() const;

  // Accepts "3/2", "-1/3i", "2+1/3i", "i", "1.5", "0.25-2i".
  static ComplexScalar parse(const std::string& text);

 private:
  template <class Op>
  static ComplexScalar combine(const ComplexScalar& a, const ComplexScalar& b, Op op) {
    if (a.is_exact() && b.is_exact()) return ComplexScalar(op(a.exact(), b.exact()));
    bool dem = a.demoted_ || b.demoted_ || a.is_exact() != b.is_exact();
    return ComplexScalar(op(a.value(), b.value()), dem);
  }

  std::variant<QQi, cplx> v_;
  bool demoted_ = false;
};

namespace detail {

inline bool parse_real_token(const std::string& tok, mpq_class& q, double& d, bool& exact) {
  if (tok.empty()) return false;
  if (tok.find_first_of(".eE") != std::string::npos) {
    char* end = nullptr;
    d = std::strtod(tok.c_str(), &end);
    exact = false;
    return end && *end == '\0';
  }
  for (char c : tok)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) return false;
  if (tok.find('/') != std::string::npos && tok.back() == '/') return false;
  try {
    std::string t = tok[0] == '+' ? tok.substr(1) : tok;
    q = mpq_class(t, 10);
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (sgn(q.get_den()) == 0) return false;
  q.canonicalize();
  exact = true;
  return true;
}

}  // namespace detail

inline ComplexScalar ComplexScalar::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::InvalidParams, "empty scalar");

  // split into signed terms; a sign directly after an exponent marker stays inside the term
  std::vector<std::string> terms;
  std::string cur;
  for (size_t k = 0; k < s.size(); ++k) {
    char c = s[k];
    bool sign = (c == '+' || c == '-');
    bool after_exp = k > 0 && (s[k - 1] == 'e' || s[k - 1] == 'E');
    if (sign && k > 0 && !after_exp && !cur.empty()) {
      terms.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  terms.push_back(cur);
  if (terms.size() > 2) throw Error(ErrorCode::InvalidParams, "cannot parse scalar '" + raw + "'");

  mpq_class re_q(0), im_q(0);
  double re_d = 0, im_d = 0;
  bool all_exact = true, have_re = false, have_im = false;
  for (const auto& t : terms) {
    bool imag = !t.empty() && t.back() == 'i';
    std::string body = imag ? t.substr(0, t.size() - 1) : t;
    if (imag && (body.empty() || body == "+" || body == "-")) body += "1";
    if (!body.empty() && body.back() == '*') body.pop_back();
    mpq_class q;
    double d = 0;
    bool exact = true;
    if (!detail::parse_real_token(body, q, d, exact))
      throw Error(ErrorCode::InvalidParams, "cannot parse scalar '" + raw + "'");
    if (exact) d = q.get_d();
    all_exact = all_exact && exact;
    if (imag) {
      if (have_im) throw Error(ErrorCode::InvalidParams, "two imaginary parts in '" + raw + "'");
      have_im = true;
      im_q = q;
      im_d = d;
    } else {
      if (have_re) throw Error(ErrorCode::InvalidParams, "two real parts in '" + raw + "'");
      have_re = true;
      re_q = q;
      re_d = d;
    }
  }
  if (all_exact) return ComplexScalar(QQi(re_q, im_q));
  return ComplexScalar(cplx(re_d, im_d));
}

inline std::string ComplexScalar::str() const {
  if (is_exact()) return exact().str();
  char buf[64];
  cplx z = value();
  if (z.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace midx
