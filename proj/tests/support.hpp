#pragma once

#include <random>

#include "catsl2/poly.hpp"

namespace testing_support {

using catsl2::Polynomial;
using catsl2::VarSymbol;

inline Polynomial X(int j, int n) { return Polynomial(VarSymbol::x(j, n)); }
inline Polynomial Y(int j, int n) { return Polynomial(VarSymbol::y(j, n)); }
inline Polynomial Xi(int pos = 1) { return Polynomial(VarSymbol::xi(pos)); }
inline Polynomial C(long num, long den = 1) { return Polynomial(catsl2::make_rational(num, den)); }

/// Random polynomial over a fixed small alphabet with small rational coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, int max_terms = 4, int max_exp = 3) {
  static const VarSymbol alphabet[] = {VarSymbol::x(1, 0), VarSymbol::x(2, 0), VarSymbol::y(1, 0), VarSymbol::xi(1), VarSymbol::xi(2)};
  std::uniform_int_distribution<int> terms(0, max_terms), exps(0, max_exp), coef(-5, 5), den(1, 3);
  Polynomial p;
  int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    Polynomial m = C(coef(rng), den(rng));
    for (const auto& v : alphabet) m *= Polynomial(v).pow(exps(rng) % 2 == 0 ? 0 : exps(rng));
    p += m;
  }
  return p;
}

/// Random homogeneous polynomial of the given (even) degree in x1, x2, y1 at weight 0.
inline Polynomial random_homogeneous(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> coef(-4, 4);
  Polynomial p;
  int d = degree / 2;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; 2 * b <= d - a; ++b) {
      int c = d - a - 2 * b;
      p += C(coef(rng)) * X(1, 0).pow(a) * X(2, 0).pow(b) * Y(1, 0).pow(c);
    }
  return p;
}

}  // namespace testing_support
