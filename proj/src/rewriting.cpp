#include "catsl2/rewriting.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace catsl2 {

namespace {

using Term = std::vector<Monomial>;
using Rings = std::vector<const FactorRing*>;

enum class Rule { R2, R1a, R1b };

struct Redex {
  int factor = -1;
  Rule rule = Rule::R2;
  VarSymbol symbol;
};

TermMeasure measure(const Rings& rings, const Term& t) {
  int m = static_cast<int>(rings.size());
  TermMeasure out(m);
  for (int i = 0; i < m; ++i) {
    const FactorRing& fr = *rings[i];
    for (const auto& [v, e] : t[i].factors()) {
      if (v == fr.xi()) {
        out[i][1] = e;
      } else if (fr.is_right(v)) {
        if (i + 1 < m) out[i][2] += e;
      } else {
        out[i][0] += e;
      }
    }
  }
  return out;
}

std::vector<Redex> redexes_in(const Rings& rings, const Term& t, int i) {
  const FactorRing& fr = *rings[i];
  std::vector<Redex> out;
  if (t[i].exponent(fr.xi()) > fr.bound()) out.push_back({i, Rule::R2, fr.xi()});
  for (const auto& [v, e] : t[i].factors())
    if (fr.transport(v) != nullptr) {
      out.push_back({i, Rule::R1a, v});
      break;
    }
  if (i + 1 < static_cast<int>(rings.size()))
    for (const auto& [v, e] : t[i].factors())
      if (fr.is_right(v)) {
        out.push_back({i, Rule::R1b, v});
        break;
      }
  return out;
}

std::vector<std::pair<Term, Rational>> apply(const Rings& rings, const Term& t, const Redex& r) {
  const FactorRing& fr = *rings[r.factor];
  std::vector<std::pair<Term, Rational>> out;
  const Monomial& mono = t[r.factor];
  int e = mono.exponent(r.symbol);
  Monomial rest = mono.without(r.symbol);
  switch (r.rule) {
    case Rule::R2: {
      int b = fr.bound();
      rest = rest.times(Monomial(r.symbol, e - b - 1));
      Polynomial relation = fr.xi_power(b + 1);
      for (const auto& [m, c] : relation.terms()) {
        Term u = t;
        u[r.factor] = rest.times(m);
        out.emplace_back(std::move(u), c);
      }
      break;
    }
    case Rule::R1a: {
      rest = rest.times(Monomial(r.symbol, e - 1));
      for (const auto& [m, c] : fr.transport(r.symbol)->terms()) {
        Term u = t;
        u[r.factor] = rest.times(m);
        out.emplace_back(std::move(u), c);
      }
      break;
    }
    case Rule::R1b: {
      Term u = t;
      u[r.factor] = rest;
      u[r.factor + 1] = u[r.factor + 1].times(Monomial(r.symbol, e));
      out.emplace_back(std::move(u), Rational(1));
      break;
    }
  }
  return out;
}

}  // namespace

RewriteResult rewrite_normalize(const RawTensor& raw, Strategy strategy, std::uint64_t seed, long step_budget) {
  const FlagPath& path = raw.path;
  RewriteResult result{BimElement(path), {}};
  if (path.is_zero()) return result;
  const int m = path.length();
  if (static_cast<int>(raw.factors.size()) != m) throw std::invalid_argument("raw tensor factor count mismatch");
  if (m == 0) {
    result.element = normalize(raw);
    return result;
  }

  Rings rings;
  for (int i = 0; i < m; ++i) {
    const FactorRing& fr = factor_ring(path, i);
    rings.push_back(&fr);
    for (const VarSymbol& v : raw.factors[i].variables())
      if (!fr.is_allowed(v))
        throw std::invalid_argument(fmt::format("generator {} is not available in factor {}", v.to_string(), i + 1));
  }
  if (!raw.tail.uses_only(path.right_context().generators()))
    throw std::invalid_argument("tail coefficient outside the right end ring");

  // Expand into pure tensors; the tail joins the last factor.
  std::map<Term, Rational> pending{{Term(m), Rational(1)}};
  for (int i = 0; i <= m; ++i) {
    const Polynomial& p = i < m ? raw.factors[i] : raw.tail;
    int slot = i < m ? i : m - 1;
    std::map<Term, Rational> next;
    for (const auto& [t, c] : pending)
      for (const auto& [mono, d] : p.terms()) {
        Term u = t;
        u[slot] = u[slot].times(mono);
        next[u] += c * d;
      }
    pending.clear();
    for (auto& [t, c] : next)
      if (c != 0) pending.emplace(t, c);
  }

  // Largest measure first: every contribution to a term comes from a term of larger measure,
  // so each term is rewritten once, with its coefficient complete.
  using Key = std::pair<TermMeasure, Term>;
  std::map<Key, Rational, std::greater<Key>> work;
  for (auto& [t, c] : pending) work.emplace(Key{measure(rings, t), t}, c);

  std::mt19937_64 rng(seed);
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::map<ExponentVector, Polynomial> normal;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const Term& t = node.key().second;
    const TermMeasure& before = node.key().first;
    const Rational c = node.mapped();

    std::vector<Redex> candidates;
    for (int i = 0; i < m; ++i) {
      auto here = redexes_in(rings, t, i);
      candidates.insert(candidates.end(), here.begin(), here.end());
    }
    if (candidates.empty()) {
      ExponentVector e(m);
      for (int i = 0; i < m; ++i) e[i] = t[i].exponent(VarSymbol::xi(i + 1));
      normal[e].add_term(t[m - 1].without(VarSymbol::xi(m)), c);
      continue;
    }

    Redex chosen;
    switch (strategy) {
      case Strategy::LeftToRight:
        chosen = candidates.front();
        break;
      case Strategy::RightToLeft: {
        int last = candidates.back().factor;
        for (const auto& r : candidates)
          if (r.factor == last) {
            chosen = r;
            break;
          }
        break;
      }
      case Strategy::Random: {
        std::vector<Redex> first;
        for (int i : order) {
          for (const auto& r : candidates)
            if (r.factor == i) first.push_back(r);
          if (!first.empty()) break;
        }
        chosen = first[std::uniform_int_distribution<std::size_t>(0, first.size() - 1)(rng)];
        break;
      }
    }

    if (++result.stats.steps > step_budget)
      throw std::runtime_error(fmt::format("rewriting exceeded {} steps", step_budget));
    for (auto& [u, d] : apply(rings, t, chosen)) {
      Key key{measure(rings, u), u};
      if (result.stats.measure_decreased && !(key.first < before)) {
        result.stats.measure_decreased = false;
        result.stats.violation = fmt::format("rule at factor {} did not lower the measure", chosen.factor + 1);
      }
      Rational& slot = work[key];
      slot += c * d;
      if (slot == 0) work.erase(key);
    }
  }
  for (const auto& [e, p] : normal) result.element.add(e, p);
  return result;
}

}  // namespace catsl2
