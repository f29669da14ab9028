#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "catsl2/grassrings.hpp"
#include "catsl2/laurent.hpp"
#include "catsl2/poly.hpp"

namespace catsl2 {

using ExponentVector = std::vector<int>;

/// A sequence of rings k_0, ..., k_m with unit steps, read left to right, plus a grading shift.
/// Factor i (0-based) is the one-step ring between k_i and k_{i+1}; its xi is xi{i+1}.
/// A path leaving [0, N] denotes the zero bimodule.
class FlagPath {
 public:
  FlagPath() = default;
  /// Throws std::invalid_argument on N < 1, an empty ring list, or a non-unit step.
  static FlagPath make(int N, std::vector<int> rings, int shift = 0);
  static FlagPath identity(int N, int k, int shift = 0) { return make(N, {k}, shift); }

  int N() const { return N_; }
  const std::vector<int>& rings() const { return rings_; }
  int shift() const { return shift_; }
  int length() const { return static_cast<int>(rings_.size()) - 1; }
  int left_ring() const { return rings_.front(); }
  int right_ring() const { return rings_.back(); }
  bool is_zero() const;

  bool ascending(int i) const { return rings_[i + 1] == rings_[i] + 1; }
  /// Exponent bound of factor i: the lower ring for an ascending step, N - lower - 1 otherwise.
  int bound(int i) const;

  GrassContext left_context() const { return GrassContext::make(N_, left_ring()); }
  GrassContext right_context() const { return GrassContext::make(N_, right_ring()); }

  FlagPath with_shift(int s) const;
  /// Sub-path of rings [from, to] (inclusive ring indices), shift 0.
  FlagPath slice(int from, int to) const;
  FlagPath concat(const FlagPath& rest) const;

  bool same_module(const FlagPath& o) const { return N_ == o.N_ && rings_ == o.rings_; }
  bool operator==(const FlagPath& o) const = default;

  /// "(0,1,0)" or "(0,1,0){-1}".
  std::string to_string() const;

 private:
  int N_ = 1;
  std::vector<int> rings_{0};
  int shift_ = 0;
};

/// The one-step ring between two adjacent rings of a path, with its exchange relations.
class FactorRing {
 public:
  FactorRing(int N, int left, int right, int position);

  int N() const { return N_; }
  int left() const { return left_; }
  int right() const { return right_; }
  int lower() const { return lower_; }
  bool ascending() const { return right_ > left_; }
  int position() const { return position_; }
  int bound() const { return ascending() ? lower_ : N_ - lower_ - 1; }
  VarSymbol xi() const { return VarSymbol::xi(position_); }
  GrassContext lower_context() const { return GrassContext::make(N_, lower_); }

  const std::vector<VarSymbol>& left_generators() const { return left_gens_; }
  const std::vector<VarSymbol>& right_generators() const { return right_gens_; }
  /// x_{1..lower,n}, xi, y_{1..N-lower-1,n+2} with n the weight of the lower ring.
  std::vector<VarSymbol> canonical_generators() const;

  bool is_right(const VarSymbol& v) const;
  bool is_allowed(const VarSymbol& v) const;
  /// Expression of a non-right ring generator through right generators and xi; null otherwise.
  const Polynomial* transport(const VarSymbol& v) const;
  /// xi^e rewritten with exponents at most bound().
  Polynomial xi_power(int e) const;
  /// Reduces xi exponents above bound().
  Polynomial reduce(const Polynomial& p) const;
  /// Rewrites p (in left, right and canonical generators) into right generators and bounded xi.
  /// Throws std::invalid_argument on a generator foreign to this factor.
  Polynomial to_right_form(const Polynomial& p) const;

 private:
  int N_, left_, right_, lower_, position_;
  std::vector<VarSymbol> left_gens_, right_gens_;
  std::map<VarSymbol, Polynomial> transport_;
  mutable std::mutex mu_;
  mutable std::vector<Polynomial> xi_powers_;
};

/// Shared, cached factor ring for (N, left, right, position).
const FactorRing& factor_ring(int N, int left, int right, int position);
const FactorRing& factor_ring(const FlagPath& path, int i);

/// Element in normal form: exponent vector -> coefficient in the rightmost ring.
class BimElement {
 public:
  using Terms = std::map<ExponentVector, Polynomial>;

  BimElement() = default;
  explicit BimElement(FlagPath path) : path_(std::move(path)) {}
  static BimElement basis_element(const FlagPath& path, const ExponentVector& e,
                                  const Polynomial& coefficient = Polynomial::one());

  const FlagPath& path() const { return path_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Polynomial coefficient(const ExponentVector& e) const;

  void add(const ExponentVector& e, const Polynomial& c);
  BimElement& operator+=(const BimElement& o);
  BimElement& operator-=(const BimElement& o);
  friend BimElement operator+(BimElement a, const BimElement& b) { return a += b; }
  friend BimElement operator-(BimElement a, const BimElement& b) { return a -= b; }
  BimElement operator*(const Rational& c) const;
  BimElement operator-() const { return *this * Rational(-1); }

  /// Degree including the path shift.
  DegreeInfo degree() const;

  bool operator==(const BimElement& o) const { return path_.same_module(o.path_) && terms_ == o.terms_; }

  /// Rendering in the element grammar, e.g. "xi | 1 - x[1]@0*1 | xi".
  std::string to_string() const;

 private:
  FlagPath path_;
  Terms terms_;
};

/// Formal tensor of per-factor polynomials, with a tail coefficient in the rightmost ring.
struct RawTensor {
  FlagPath path;
  std::vector<Polynomial> factors;
  Polynomial tail = Polynomial::one();

  static RawTensor monomial(const FlagPath& path, const ExponentVector& e);
};

int basis_degree(const ExponentVector& e);

BimElement normalize(const RawTensor& raw);

enum class Side { Left, Right };

/// Action of an end-ring element; throws std::invalid_argument if r uses foreign generators.
BimElement act(Side side, const Polynomial& r, const BimElement& e);

/// Tensor product over the shared junction ring; shifts add.
BimElement tensor(const BimElement& a, const BimElement& b);

std::vector<ExponentVector> basis(const FlagPath& path);

/// Sum over the basis of q^(2*|a| + shift).
Laurent graded_rank(const FlagPath& path);

}  // namespace catsl2
