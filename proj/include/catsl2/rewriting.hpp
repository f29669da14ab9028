#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "catsl2/bimodule.hpp"

namespace catsl2 {

/// Term-by-term rewriting to normal form. Slower than normalize(); it exists so that
/// termination and confluence can be checked rule by rule.
///
/// Rules on a pure tensor of monomials, per factor i:
///   R2  xi_i^(b+1) -> monic relation (b the exponent bound)
///   R1a a left or canonical generator not in the right ring -> its right-ring expression
///   R1b a power of a right-ring generator in a non-final factor -> moved into factor i+1
/// Random fixes a seeded factor order for the whole run and picks the rule within a factor per term.
enum class Strategy { LeftToRight, RightToLeft, Random };

/// Per factor: (non-right generator occurrences, xi exponent, right generator occurrences).
/// Compared lexicographically, leftmost factor most significant; every rule strictly lowers it.
using TermMeasure = std::vector<std::array<int, 3>>;

struct RewriteStats {
  long steps = 0;
  bool measure_decreased = true;  // false if some rewrite failed to lower the term measure
  std::string violation;
};

struct RewriteResult {
  BimElement element;
  RewriteStats stats;
};

RewriteResult rewrite_normalize(const RawTensor& raw, Strategy strategy, std::uint64_t seed = 0,
                                long step_budget = 5'000'000);

}  // namespace catsl2
