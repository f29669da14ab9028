#include "catsl2/poly.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace catsl2 {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string VarSymbol::to_string() const {
  switch (kind) {
    case VarKind::ChernX:
      return fmt::format("x[{}]@{}", index, weight);
    case VarKind::ChernY:
      return fmt::format("y[{}]@{}", index, weight);
    case VarKind::Xi:
      return fmt::format("xi{{{}}}", index);
  }
  return "?";
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(VarSymbol v, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  if (exponent > 0) factors_.emplace_back(v, exponent);
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_) d += v.degree() * e;
  return d;
}

int Monomial::exponent(const VarSymbol& v) const {
  for (const auto& [s, e] : factors_)
    if (s == v) return e;
  return 0;
}

Monomial Monomial::without(const VarSymbol& v) const {
  Monomial out;
  for (const auto& f : factors_)
    if (f.first != v) out.factors_.push_back(f);
  return out;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first < b->first) {
      out.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.factors_.insert(out.factors_.end(), a, factors_.end());
  out.factors_.insert(out.factors_.end(), b, other.factors_.end());
  return out;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += v.to_string();
    if (e != 1) s += fmt::format("^{}", e);
  }
  return s;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

Polynomial::Polynomial(VarSymbol v, int exponent) { terms_.emplace(Monomial(v, exponent), Rational(1)); }

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

Rational Polynomial::constant() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Polynomial result = one();
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

DegreeInfo Polynomial::homogeneous_degree() const {
  DegreeInfo info;
  for (const auto& [m, c] : terms_) {
    int d = m.degree();
    if (info.kind == DegreeInfo::Kind::AnyDegree) {
      info = {DegreeInfo::Kind::Homogeneous, d};
    } else if (info.degree != d) {
      return {DegreeInfo::Kind::Inhomogeneous, 0};
    }
  }
  return info;
}

int Polynomial::max_exponent(const VarSymbol& v) const {
  int e = 0;
  for (const auto& [m, c] : terms_) e = std::max(e, m.exponent(v));
  return e;
}

bool Polynomial::uses_only(const std::vector<VarSymbol>& allowed) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
  return true;
}

std::vector<VarSymbol> Polynomial::variables() const {
  std::vector<VarSymbol> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polynomial Polynomial::substitute(const std::map<VarSymbol, Polynomial>& images) const {
  std::map<std::pair<VarSymbol, int>, Polynomial> powers;
  auto power_of = [&](const VarSymbol& v, int e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    auto img = images.find(v);
    Polynomial p = img == images.end() ? Polynomial(v, e) : img->second.pow(e);
    return powers.emplace(key, std::move(p)).first->second;
  };

  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    Monomial kept;
    for (const auto& [v, e] : m.factors()) {
      if (images.count(v)) {
        term *= power_of(v, e);
        if (term.is_zero()) break;
      } else {
        kept = kept.times(Monomial(v, e));
      }
    }
    if (term.is_zero()) continue;
    for (const auto& [tm, tc] : term.terms_) out.add_term(tm.times(kept), tc);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<const Monomial*, const Rational*>> order;
  for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first->degree() > b.first->degree(); });
  std::string s;
  bool first = true;
  for (const auto& [m, c] : order) {
    Rational mag = abs(*c);
    bool negative = sgn(*c) < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m->is_one()) {
      s += catsl2::to_string(mag);
    } else if (mag == 1) {
      s += m->to_string();
    } else {
      s += catsl2::to_string(mag) + "*" + m->to_string();
    }
  }
  return s;
}

Polynomial poly_arith_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_arith_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

std::vector<Polynomial> series_invert(const std::vector<Polynomial>& components, int D) {
  if (components.empty() || !(components[0] == Polynomial::one()))
    throw std::invalid_argument("series_invert: constant component must be 1");
  if (D < 0) throw std::invalid_argument("series_invert: negative truncation degree");
  std::vector<Polynomial> inv(D + 1);
  inv[0] = Polynomial::one();
  for (int d = 1; d <= D; ++d) {
    Polynomial acc;
    for (int i = 1; i <= d && i < static_cast<int>(components.size()); ++i) acc += components[i] * inv[d - i];
    inv[d] = -acc;
  }
  return inv;
}

}  // namespace catsl2
