#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "midx/errors.hpp"
#include "midx/systems.hpp"

namespace midx {

enum class VType { I, II };

inline const char* vtype_name(VType t) { return t == VType::I ? "I" : "II"; }

struct IndexEntry {
  VType type;
  int degree;
  friend bool operator==(const IndexEntry& a, const IndexEntry& b) { return a.type == b.type && a.degree == b.degree; }
};

// Multi-index D. Determinants always put type I columns before type II columns and
// keep the stored order inside each type.
class IndexSet {
 public:
  IndexSet() = default;

  // No range or distinctness checks; used for sets at shifted parameters.
  static IndexSet ordered(std::vector<IndexEntry> e, int sign = 1) {
    IndexSet s;
    s.entries_ = std::move(e);
    s.sign_ = sign;
    return s;
  }

  const std::vector<IndexEntry>& entries() const { return entries_; }
  std::vector<int> degrees(VType t) const {
    std::vector<int> d;
    for (const auto& e : entries_)
      if (e.type == t) d.push_back(e.degree);
    return d;
  }
  // Column order used by the determinant builders.
  std::vector<IndexEntry> columns() const {
    std::vector<IndexEntry> c;
    for (int d : degrees(VType::I)) c.push_back({VType::I, d});
    for (int d : degrees(VType::II)) c.push_back({VType::II, d});
    return c;
  }

  int M() const { return int(entries_.size()); }
  int MI() const { return int(degrees(VType::I).size()); }
  int MII() const { return M() - MI(); }
  int degree_sum() const {
    int s = 0;
    for (const auto& e : entries_) s += e.degree;
    return s;
  }
  int ell() const { return degree_sum() - M() * (M() - 1) / 2 + 2 * MI() * MII(); }
  bool even() const { return ell() % 2 == 0; }
  // Sign of the permutation that took the user's order to this one.
  int sign() const { return sign_; }

  std::string str() const {
    std::ostringstream os;
    for (size_t k = 0; k < entries_.size(); ++k) {
      if (k) os << ",";
      os << vtype_name(entries_[k].type) << ":" << entries_[k].degree;
    }
    return os.str();
  }

 private:
  std::vector<IndexEntry> entries_;
  int sign_ = 1;
};

// Parses "I:2,II:1" or, for a single-type family, "0,1,3".
inline std::vector<IndexEntry> parse_index_list(const std::string& text) {
  std::vector<IndexEntry> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    VType t = VType::I;
    std::string num = tok;
    auto colon = tok.find(':');
    if (colon != std::string::npos) {
      std::string ty = tok.substr(0, colon);
      if (ty == "I" || ty == "i" || ty == "1") t = VType::I;
      else if (ty == "II" || ty == "ii" || ty == "2") t = VType::II;
      else throw Error(ErrorCode::InvalidParams, "unknown virtual-state type '" + ty + "'");
      num = tok.substr(colon + 1);
    }
    if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit))
      throw Error(ErrorCode::InvalidParams, "bad degree in '" + tok + "'");
    out.push_back({t, std::stoi(num)});
  }
  return out;
}

// ---- twists

template <class T>
ContinuousHahn<T> twist(const ContinuousHahn<T>& l, VType t) {
  if (t == VType::I) return {T(1) - conj(l.a1), l.a2};
  return {l.a1, T(1) - conj(l.a2)};
}

template <class T>
MeixnerPollaczek<T> twist(const MeixnerPollaczek<T>& l, VType t) {
  if (t != VType::I) throw Error(ErrorCode::UnsupportedFamily, "Meixner-Pollaczek has a single twist");
  return {T(1) - l.a, l.u};
}

// lambda + delta-tilde for one step of the given type
template <class T>
ContinuousHahn<T> add_delta_tilde(const ContinuousHahn<T>& l, VType t, int times = 1) {
  T h = from_ratio<T>(times, 2);
  return t == VType::I ? l.shifted(-h, h) : l.shifted(h, -h);
}

template <class T>
MeixnerPollaczek<T> add_delta_tilde(const MeixnerPollaczek<T>& l, VType t, int times = 1) {
  if (t != VType::I) throw Error(ErrorCode::UnsupportedFamily, "Meixner-Pollaczek has a single twist");
  return l.shifted(-from_ratio<T>(times, 2));
}

// lambda^{[MI, MII]}
template <class T>
ContinuousHahn<T> bracket_params(const ContinuousHahn<T>& l, int MI, int MII) {
  T d = from_ratio<T>(MII - MI, 2);
  return l.shifted(d, -d);
}

template <class T>
MeixnerPollaczek<T> bracket_params(const MeixnerPollaczek<T>& l, int MI, int MII) {
  return l.shifted(-from_ratio<T>(MI + MII, 2));
}

// alpha' such that H(lambda) = H(t(lambda)) + alpha'
template <class T>
T alpha_prime(const ContinuousHahn<T>& l, VType t) {
  T A1 = l.a1 + conj(l.a1), A2 = l.a2 + conj(l.a2);
  return t == VType::I ? -(A1 - T(1)) * A2 : -(A2 - T(1)) * A1;
}

template <class T>
T alpha_prime(const MeixnerPollaczek<T>& l, VType t) {
  if (t != VType::I) throw Error(ErrorCode::UnsupportedFamily, "Meixner-Pollaczek has a single twist");
  return T(2) * (T(1) - T(2) * l.a) * l.sin_phi();
}

template <class Fam>
auto virtual_energy(const Fam& l, VType t, int v) {
  return twist(l, t).energy(v) + alpha_prime(l, t);
}

template <class T>
T param_of_type(const ContinuousHahn<T>& l, VType t) {
  return t == VType::I ? l.a1 : l.a2;
}

template <class T>
T param_of_type(const MeixnerPollaczek<T>& l, VType t) {
  if (t != VType::I) throw Error(ErrorCode::UnsupportedFamily, "Meixner-Pollaczek has a single twist");
  return l.a;
}

// Largest admissible degree, [2 Re a - 1]'; the range is {0, ..., result}.
template <class Fam>
int admissible_max(const Fam& l, VType t) {
  l.validate_deformable();
  using T = decltype(param_of_type(l, t));
  T a = param_of_type(l, t);
  return int(strict_floor_real(T(2) * a - T(1)));
}

template <class Fam>
auto virtual_poly(const Fam& l, VType t, int v, bool check_range = true) {
  if (check_range && (v < 0 || v > admissible_max(l, t)))
    throw Error(ErrorCode::OutOfRange, "virtual degree " + std::to_string(v) + " outside the admissible range");
  return twist(l, t).poly(v);
}

inline int inversion_sign(const std::vector<int>& v) {
  int s = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) s = -s;
  return s;
}

template <class Fam>
IndexSet validate_index_set(const std::vector<IndexEntry>& entries, const Fam& l) {
  l.validate_deformable();
  std::vector<int> dI, dII;
  for (const auto& e : entries) {
    if (e.type == VType::II && Fam::family == Family::MeixnerPollaczek)
      throw Error(ErrorCode::UnsupportedFamily, "Meixner-Pollaczek has no type II virtual states");
    (e.type == VType::I ? dI : dII).push_back(e.degree);
  }
  int sign = inversion_sign(dI) * inversion_sign(dII);
  for (VType t : {VType::I, VType::II}) {
    auto& d = t == VType::I ? dI : dII;
    if (d.empty()) continue;
    int mx = admissible_max(l, t);
    std::sort(d.begin(), d.end());
    for (size_t k = 0; k < d.size(); ++k) {
      if (k && d[k] == d[k - 1])
        throw Error(ErrorCode::DuplicateDegree, std::string("type ") + vtype_name(t) + " degree " + std::to_string(d[k]) + " repeated");
      if (d[k] < 0 || d[k] > mx)
        throw Error(ErrorCode::DegreeOutOfRange, std::string("type ") + vtype_name(t) + " degree " + std::to_string(d[k]) +
                                                    " outside {0.." + std::to_string(mx) + "}");
    }
  }
  std::vector<IndexEntry> canon;
  for (int d : dI) canon.push_back({VType::I, d});
  for (int d : dII) canon.push_back({VType::II, d});
  return IndexSet::ordered(std::move(canon), sign);
}

}  // namespace midx
