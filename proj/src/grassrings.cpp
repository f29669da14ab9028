#include "catsl2/grassrings.hpp"

#include <fmt/format.h>

#include <mutex>
#include <stdexcept>
#include <tuple>

namespace catsl2 {

GrassContext GrassContext::make(int N, int k) {
  if (N < 1) throw std::invalid_argument(fmt::format("N must be positive, got {}", N));
  if (k < 0 || k > N) throw std::invalid_argument(fmt::format("k = {} outside [0, {}]", k, N));
  return {N, k};
}

GrassContext GrassContext::from_weight(int N, int n) {
  if (((n + N) % 2 + 2) % 2 != 0)
    throw std::invalid_argument(fmt::format("weight {} has the wrong parity for N = {}", n, N));
  return make(N, (n + N) / 2);
}

Polynomial GrassContext::x(int j) const {
  if (j == 0) return Polynomial::one();
  if (j < 0 || j > k) return {};
  return Polynomial(VarSymbol::x(j, n()));
}

Polynomial GrassContext::y(int j) const {
  if (j == 0) return Polynomial::one();
  if (j < 0 || j > N - k) return {};
  return Polynomial(VarSymbol::y(j, n()));
}

std::vector<VarSymbol> GrassContext::generators() const {
  std::vector<VarSymbol> out;
  for (int j = 1; j <= k; ++j) out.push_back(VarSymbol::x(j, n()));
  for (int j = 1; j <= N - k; ++j) out.push_back(VarSymbol::y(j, n()));
  return out;
}

std::vector<VarSymbol> StepContext::canonical_generators() const {
  std::vector<VarSymbol> out;
  for (int j = 1; j <= base.k; ++j) out.push_back(VarSymbol::x(j, base.n()));
  out.push_back(VarSymbol::xi(xi_position));
  for (int j = 1; j <= base.N - base.k - 1; ++j) out.push_back(VarSymbol::y(j, base.n() + 2));
  return out;
}

namespace {

struct SpecialCache {
  std::mutex mu;
  // (N, k, family) -> values for alpha = 0, 1, ...
  std::map<std::tuple<int, int, int>, std::vector<Polynomial>> values;
};

SpecialCache& special_cache() {
  static SpecialCache cache;
  return cache;
}

}  // namespace

Polynomial special_class(const GrassContext& ctx, Family family, int alpha) {
  if (alpha < 0) return {};
  auto& cache = special_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto& seq = cache.values[{ctx.N, ctx.k, static_cast<int>(family)}];
  if (seq.empty()) seq.push_back(Polynomial::one());
  while (static_cast<int>(seq.size()) <= alpha) {
    int a = static_cast<int>(seq.size());
    Polynomial acc;
    for (int j = 1; j <= a; ++j) {
      Polynomial g = family == Family::X ? ctx.y(j) : ctx.x(j);
      if (!g.is_zero()) acc += g * seq[a - j];
    }
    seq.push_back(-acc);
  }
  return seq[alpha];
}

Polynomial bubble_value(const GrassContext& ctx, Orientation orientation, int alpha) {
  if (alpha < 0) return {};
  Polynomial acc;
  if (orientation == Orientation::Clockwise) {
    for (int l = 0; l <= ctx.N - ctx.k && l <= alpha; ++l) acc += ctx.y(l) * special_class(ctx, Family::Y, alpha - l);
  } else {
    for (int l = 0; l <= ctx.k && l <= alpha; ++l) acc += ctx.x(l) * special_class(ctx, Family::X, alpha - l);
  }
  if (alpha % 2 != 0) acc = -acc;
  return acc;
}

SeriesCheck check_series_identity(const GrassContext& ctx, SeriesIdentity which, int D) {
  SeriesCheck result;
  for (int d = 0; d <= D; ++d) {
    Polynomial acc;
    for (int j = 0; j <= d; ++j) {
      switch (which) {
        case SeriesIdentity::XY:
          acc += ctx.x(j) * special_class(ctx, Family::Y, d - j);
          break;
        case SeriesIdentity::Xy:
          acc += ctx.y(j) * special_class(ctx, Family::X, d - j);
          break;
        case SeriesIdentity::BubbleProduct:
          acc += bubble_value(ctx, Orientation::Clockwise, j) * bubble_value(ctx, Orientation::CounterClockwise, d - j);
          break;
      }
    }
    Polynomial expected = d == 0 ? Polynomial::one() : Polynomial();
    if (!(acc == expected)) {
      result.ok = false;
      result.report = fmt::format("degree {}: residue {}", d, (acc - expected).to_string());
      return result;
    }
  }
  return result;
}

}  // namespace catsl2
