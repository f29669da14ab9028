#pragma once

#include <string>
#include <vector>

#include "catsl2/poly.hpp"

namespace catsl2 {

/// The ring H_k of the Grassmannian of k-planes in N-space, weight n = 2k - N.
struct GrassContext {
  int N = 1;
  int k = 0;

  /// Throws std::invalid_argument unless N >= 1 and 0 <= k <= N.
  static GrassContext make(int N, int k);
  /// Context for weight n; throws on parity mismatch or |n| > N.
  static GrassContext from_weight(int N, int n);

  int n() const { return 2 * k - N; }

  /// x_{j,n}: 1 for j = 0, zero outside 0..k.
  Polynomial x(int j) const;
  /// y_{j,n}: 1 for j = 0, zero outside 0..N-k.
  Polynomial y(int j) const;
  /// x_{1..k,n} followed by y_{1..N-k,n}.
  std::vector<VarSymbol> generators() const;
  bool operator==(const GrassContext&) const = default;
};

/// The one-step ring between H_k and H_{k+1}, k = base.k.
struct StepContext {
  GrassContext base;
  /// xi symbol used for this step's canonical generator.
  int xi_position = 1;

  /// x_{1..k,n}, xi, y_{1..N-k-1,n+2}.
  std::vector<VarSymbol> canonical_generators() const;
};

enum class Family { X, Y };
enum class Orientation { Clockwise, CounterClockwise };

/// X_{a,n} = -sum_{j>=1} y_{j,n} X_{a-j,n}; Y_{b,n} = -sum_{j>=1} x_{j,n} Y_{b-j,n}.
/// X_0 = Y_0 = 1, zero for negative index. Memoized, safe to call concurrently.
Polynomial special_class(const GrassContext& ctx, Family family, int alpha);

/// Closed formula for the bubble of degree 2*alpha in region n. Zero for alpha < 0.
/// Clockwise: (-1)^a sum_l y_l Y_{a-l}. Counterclockwise: (-1)^a sum_l x_l X_{a-l}.
Polynomial bubble_value(const GrassContext& ctx, Orientation orientation, int alpha);

enum class SeriesIdentity { XY, Xy, BubbleProduct };

struct SeriesCheck {
  bool ok = true;
  std::string report;  // first failing degree and residue, empty on success
};

SeriesCheck check_series_identity(const GrassContext& ctx, SeriesIdentity which, int D);

}  // namespace catsl2
