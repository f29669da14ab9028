#pragma once

#include <map>
#include <string>

namespace catsl2 {

/// Integer Laurent polynomial in q.
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int exponent, long coefficient = 1);

  const std::map<int, long>& coefficients() const { return coeffs_; }
  long coefficient(int exponent) const;
  bool is_zero() const { return coeffs_.empty(); }

  void add(int exponent, long coefficient);
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  Laurent operator-() const;
  /// Multiply by q^s.
  Laurent shifted(int s) const;

  bool operator==(const Laurent&) const = default;

  /// Highest power first, e.g. "q^2 + 1 + q^-2".
  std::string to_string() const;

 private:
  std::map<int, long> coeffs_;
};

/// [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}, with [-n] = -[n].
Laurent quantum_integer(int n);

}  // namespace catsl2
