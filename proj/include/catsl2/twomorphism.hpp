#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "catsl2/bimodule.hpp"

namespace catsl2 {

enum class Letter { E, F };

/// A word in E and F applied to 1_n; letters listed left to right as written.
struct SignedWord {
  std::vector<Letter> letters;
  int weight = 0;

  /// Accepts "E F E", "EFE" or "1" (empty word).
  static SignedWord parse(const std::string& text, int weight);
  std::string letters_string() const;  // "E F E" or "1"
  bool operator==(const SignedWord&) const = default;
};

/// Grading shift attached to each letter. E from ring k: 1 - N + k in both conventions.
/// SourceWeight: F from ring k gets 1 - k (the functor convention; it makes every cup and cap
/// degree come out right). LowerRing: F between rings k+1 and k gets 1 - k, with k the lower ring.
enum class ShiftConvention { SourceWeight, LowerRing };

int letter_shift(Letter letter, int N, int source_k, ShiftConvention convention = ShiftConvention::SourceWeight);

/// Rings left to right as regions of the diagram, so the last ring is (weight + N) / 2.
/// A word whose rings leave [0, N] gives a path with is_zero() set (the zero 1-morphism).
/// Throws std::invalid_argument on a parity mismatch.
FlagPath compile_word(const SignedWord& w, int N, ShiftConvention convention = ShiftConvention::SourceWeight);

/// Path on given rings with the shift of the word they spell.
FlagPath path_of_rings(int N, const std::vector<int>& rings, ShiftConvention convention = ShiftConvention::SourceWeight);

/// Letter carried by factor i of a path: a descending step is an E strand, an ascending one an F strand.
Letter strand_letter(const FlagPath& path, int i);

/// A bimodule map, given by its values on the free basis of the domain.
class BimMap {
 public:
  using Column = std::function<BimElement(const ExponentVector&)>;

  BimMap(FlagPath domain, FlagPath codomain, int declared_degree, Column column, std::string label = "");

  static BimMap identity(const FlagPath& path);
  static BimMap zero(const FlagPath& domain, const FlagPath& codomain, int declared_degree);

  const FlagPath& domain() const { return domain_; }
  const FlagPath& codomain() const { return codomain_; }
  int declared_degree() const { return degree_; }
  const std::string& label() const { return label_; }

  /// Image of a basis vector of the domain (memoized, thread-safe).
  BimElement column(const ExponentVector& e) const;
  BimElement operator()(const BimElement& e) const;

 private:
  struct Cache;
  FlagPath domain_, codomain_;
  int degree_ = 0;
  Column column_;
  std::string label_;
  std::shared_ptr<Cache> cache_;
};

/// f after g.
BimMap compose_vertical(const BimMap& f, const BimMap& g);
/// Horizontal composite id_left * f * id_right.
BimMap whisker(const BimMap& f, const FlagPath& left, const FlagPath& right);
/// Same domain, codomain and degree required.
BimMap add_maps(const BimMap& f, const BimMap& g);
BimMap scale_map(const Rational& c, const BimMap& f);
/// Multiplication by r, an element of the junction ring k_j (j = 0 is the left end).
BimMap junction_multiply(const FlagPath& path, int junction, const Polynomial& r);

// Local generators. Paths are the generator's own source and target, shifts included.

enum class CrossingKind { Upward, Downward };
enum class CupKind { FE, EF };

/// Multiplication by xi on the single factor of a one-step path; degree 2.
BimMap local_dot(int N, int left, int right);
/// Upward on (k+2, k+1, k) (two E strands), downward on (k-2, k-1, k) (two F strands), k = right_k;
/// degree -2. The first exponent belongs to the left strand.
BimMap local_crossing(CrossingKind kind, int N, int right_k);
/// FE: (k) -> (k, k+1, k), degree n + 1. EF: (k) -> (k, k-1, k), degree 1 - n.
BimMap local_cup(CupKind kind, int N, int k);
/// FE: (k, k+1, k) -> (k), degree n + 1. EF: (k, k-1, k) -> (k), degree 1 - n.
BimMap local_cap(CupKind kind, int N, int k);

/// The displayed formulas on arbitrary (possibly unbounded) exponents, normalized.
BimElement crossing_formula(CrossingKind kind, const FlagPath& local, int m1, int m2);
Polynomial cap_formula(CupKind kind, int N, int k, int m1, int m2);

/// Generators whiskered into an ambient path; positions count strands from the left (0-based).
BimMap gen_dot(const FlagPath& ambient, int position);
BimMap gen_crossing(CrossingKind kind, const FlagPath& ambient, int position);
/// Inserts the cup at junction j (ring k_j) of the ambient domain.
BimMap gen_cup(CupKind kind, const FlagPath& ambient, int junction);
/// Removes factors position, position + 1 of the ambient domain.
BimMap gen_cap(CupKind kind, const FlagPath& ambient, int position);

/// Degree of f measured on its basis images, shifts included.
DegreeInfo measured_degree(const BimMap& f);

struct MapComparison {
  bool equal = true;
  std::string report;
  std::optional<std::string> counterexample;  // rendered difference on the first failing input
};

/// Compares on every basis vector, then on max_extra_checks spanning elements r * (xi powers up to bound + 2) * r',
/// then checks the bimodule law for both maps on max_extra_checks decorated samples.
MapComparison map_equals(const BimMap& f, const BimMap& g, int max_extra_checks = 0, std::uint64_t seed = 1);

/// Random element of H_k: a few monomials in its generators with small integer coefficients.
Polynomial random_ring_element(const GrassContext& ctx, std::mt19937_64& rng, int max_terms = 3, int max_degree = 4);

/// f(r e r') == r f(e) r' on random decorated elements; returns a failure description or empty.
std::optional<std::string> check_bimodule_law(const BimMap& f, int samples, std::uint64_t seed);

}  // namespace catsl2
