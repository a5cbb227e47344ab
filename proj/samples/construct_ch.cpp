// Builds a deformed continuous Hahn system exactly, checks it and prints the result.

#include <cstdio>
#include <iostream>
#include <string>

#include "midx/midx.hpp"

using namespace midx;

// coefficients, lowest degree first
std::string coeffs(const Poly<QQi>& p) {
  std::string out = "[";
  for (int k = 0; k <= p.degree(); ++k) out += (k ? ", " : "") + p.coeff(k).str();
  return out + "]";
}

int main() {
  ContinuousHahn<QQi> l{QQi(mpq_class(2)), QQi(mpq_class(2))};
  auto s = make_system(l, parse_index_list("I:2"));

  std::cout << "D = {" << s.index_set().str() << "}, ell_D = " << s.ell() << "\n";
  std::cout << "Xi_D(x) = " << coeffs(s.xi()) << "\n";
  for (int n = 0; n <= 2; ++n) std::cout << "P_D," << n << "(x) = " << coeffs(s.p(n)) << "\n";
  std::cout << "hermiticity: " << to_string(s.verdict()) << "\n";

  bool ok = true;
  for (int n = 0; n <= 3; ++n) ok = ok && eigencheck(s, n).ok();
  std::cout << "eigenequation n <= 3: " << (ok ? "exact" : "FAILED") << "\n";

  auto g = gram_matrix(s, 2);
  for (const auto& r : g.reports)
    std::printf("<P_%d, P_%d> = %.12g  (expected %.12g)\n", r.n, r.m, r.value, r.expected);
  return ok ? 0 : 1;
}
