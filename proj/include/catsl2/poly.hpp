#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace catsl2 {

/// Exact rational numbers; gmp keeps them in lowest terms with positive denominator.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& r);

/// (-1)^e as a rational.
inline Rational neg_one_pow(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

enum class VarKind : std::uint8_t { ChernX = 0, ChernY = 1, Xi = 2 };

/// A polynomial generator. Member order fixes the total order: kind, weight tag, index.
struct VarSymbol {
  VarKind kind = VarKind::ChernX;
  int weight = 0;  // weight tag n for Chern classes, 0 for xi
  int index = 0;   // j for Chern classes, factor position for xi

  static VarSymbol x(int j, int n) { return {VarKind::ChernX, n, j}; }
  static VarSymbol y(int j, int n) { return {VarKind::ChernY, n, j}; }
  static VarSymbol xi(int position) { return {VarKind::Xi, 0, position}; }

  int degree() const { return kind == VarKind::Xi ? 2 : 2 * index; }
  std::string to_string() const;

  auto operator<=>(const VarSymbol&) const = default;
};

/// Sorted list of (symbol, positive exponent).
class Monomial {
 public:
  using Factor = std::pair<VarSymbol, int>;

  Monomial() = default;
  explicit Monomial(VarSymbol v, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent(const VarSymbol& v) const;
  Monomial without(const VarSymbol& v) const;
  Monomial times(const Monomial& other) const;
  std::string to_string() const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Result of a homogeneity query. The zero polynomial is homogeneous of any degree.
struct DegreeInfo {
  enum class Kind { AnyDegree, Homogeneous, Inhomogeneous };
  Kind kind = Kind::AnyDegree;
  int degree = 0;

  bool homogeneous() const { return kind == Kind::Homogeneous; }
  bool operator==(const DegreeInfo&) const = default;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT
  explicit Polynomial(VarSymbol v, int exponent = 1);
  Polynomial(const Monomial& m, const Rational& c);

  static Polynomial zero() { return {}; }
  static Polynomial one() { return Polynomial(Rational(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Constant term (coefficient of the empty monomial).
  Rational constant() const;
  bool is_constant() const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Polynomial pow(int e) const;
  DegreeInfo homogeneous_degree() const;
  /// Largest exponent of v occurring in any term.
  int max_exponent(const VarSymbol& v) const;
  bool uses_only(const std::vector<VarSymbol>& allowed) const;
  std::vector<VarSymbol> variables() const;

  /// Ring homomorphism fixing every symbol not in the map.
  Polynomial substitute(const std::map<VarSymbol, Polynomial>& images) const;

  /// Terms printed by descending degree, ties in ascending monomial order.
  std::string to_string() const;

 private:
  Terms terms_;
};

Polynomial poly_arith_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_arith_mul(const Polynomial& a, const Polynomial& b);

/// Inverts the formal series c_0 + c_1 t + ... through t^D. Requires c_0 = 1.
std::vector<Polynomial> series_invert(const std::vector<Polynomial>& components, int D);

}  // namespace catsl2
