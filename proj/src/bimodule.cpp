#include "catsl2/bimodule.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace catsl2 {

// ---------------------------------------------------------------- FlagPath

FlagPath FlagPath::make(int N, std::vector<int> rings, int shift) {
  if (N < 1) throw std::invalid_argument(fmt::format("N must be positive, got {}", N));
  if (rings.empty()) throw std::invalid_argument("a flag path needs at least one ring");
  for (std::size_t i = 0; i + 1 < rings.size(); ++i)
    if (std::abs(rings[i + 1] - rings[i]) != 1)
      throw std::invalid_argument(fmt::format("step {} -> {} is not a unit step", rings[i], rings[i + 1]));
  FlagPath p;
  p.N_ = N;
  p.rings_ = std::move(rings);
  p.shift_ = shift;
  return p;
}

bool FlagPath::is_zero() const {
  return std::any_of(rings_.begin(), rings_.end(), [&](int k) { return k < 0 || k > N_; });
}

int FlagPath::bound(int i) const {
  int lower = std::min(rings_[i], rings_[i + 1]);
  return ascending(i) ? lower : N_ - lower - 1;
}

FlagPath FlagPath::with_shift(int s) const {
  FlagPath p = *this;
  p.shift_ = s;
  return p;
}

FlagPath FlagPath::slice(int from, int to) const {
  return make(N_, std::vector<int>(rings_.begin() + from, rings_.begin() + to + 1), 0);
}

FlagPath FlagPath::concat(const FlagPath& rest) const {
  if (rest.N_ != N_ || rest.left_ring() != right_ring())
    throw std::invalid_argument(fmt::format("cannot splice {} onto {}", rest.to_string(), to_string()));
  std::vector<int> r = rings_;
  r.insert(r.end(), rest.rings_.begin() + 1, rest.rings_.end());
  return make(N_, std::move(r), shift_ + rest.shift_);
}

std::string FlagPath::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < rings_.size(); ++i) s += (i ? "," : "") + std::to_string(rings_[i]);
  s += ")";
  if (shift_ != 0) s += fmt::format("{{{}}}", shift_);
  return s;
}

// -------------------------------------------------------------- FactorRing

FactorRing::FactorRing(int N, int left, int right, int position)
    : N_(N), left_(left), right_(right), lower_(std::min(left, right)), position_(position) {
  if (std::abs(left - right) != 1 || lower_ < 0 || lower_ + 1 > N)
    throw std::invalid_argument(fmt::format("no one-step ring between {} and {} for N = {}", left, right, N));
  left_gens_ = GrassContext::make(N, left).generators();
  right_gens_ = GrassContext::make(N, right).generators();

  GrassContext lo = GrassContext::make(N, lower_);
  GrassContext hi = GrassContext::make(N, lower_ + 1);
  Polynomial xi(VarSymbol::xi(position));
  if (ascending()) {
    // Left ring is the lower one: push x_{j,n} and y_{j,n} into the upper ring.
    for (int j = 1; j <= lower_; ++j) {
      Polynomial img;
      for (int l = 0; l <= j; ++l) img += neg_one_pow(l) * hi.x(j - l) * xi.pow(l);
      transport_.emplace(VarSymbol::x(j, lo.n()), img);
    }
    for (int j = 1; j <= N - lower_; ++j) transport_.emplace(VarSymbol::y(j, lo.n()), hi.y(j) + hi.y(j - 1) * xi);
  } else {
    for (int j = 1; j <= N - lower_ - 1; ++j) {
      Polynomial img;
      for (int l = 0; l <= j; ++l) img += neg_one_pow(l) * lo.y(j - l) * xi.pow(l);
      transport_.emplace(VarSymbol::y(j, hi.n()), img);
    }
    for (int j = 1; j <= lower_ + 1; ++j) transport_.emplace(VarSymbol::x(j, hi.n()), lo.x(j) + lo.x(j - 1) * xi);
  }

  // Monic relation for xi^(bound+1).
  int b = bound();
  Polynomial rel;
  if (ascending()) {
    for (int l = 0; l <= b; ++l) rel += neg_one_pow(b - l) * hi.x(b + 1 - l) * xi.pow(l);
  } else {
    for (int j = 0; j <= b; ++j) rel += neg_one_pow(b - j) * lo.y(b + 1 - j) * xi.pow(j);
  }
  for (int e = 0; e <= b; ++e) xi_powers_.push_back(xi.pow(e));
  xi_powers_.push_back(rel);
}

std::vector<VarSymbol> FactorRing::canonical_generators() const {
  return StepContext{lower_context(), position_}.canonical_generators();
}

bool FactorRing::is_right(const VarSymbol& v) const {
  return std::find(right_gens_.begin(), right_gens_.end(), v) != right_gens_.end();
}

bool FactorRing::is_allowed(const VarSymbol& v) const {
  return v == xi() || is_right(v) || transport_.count(v) > 0;
}

const Polynomial* FactorRing::transport(const VarSymbol& v) const {
  auto it = transport_.find(v);
  return it == transport_.end() ? nullptr : &it->second;
}

Polynomial FactorRing::xi_power(int e) const {
  std::lock_guard<std::mutex> lock(mu_);
  int b = bound();
  VarSymbol x = xi();
  while (static_cast<int>(xi_powers_.size()) <= e) {
    Polynomial next;
    Polynomial shifted = xi_powers_.back() * Polynomial(x);
    for (const auto& [m, c] : shifted.terms()) {
      int a = m.exponent(x);
      if (a <= b) {
        next.add_term(m, c);
      } else {
        next += Polynomial(m.without(x), c) * xi_powers_[b + 1];
      }
    }
    xi_powers_.push_back(std::move(next));
  }
  return xi_powers_[e];
}

Polynomial FactorRing::reduce(const Polynomial& p) const {
  VarSymbol x = xi();
  int b = bound();
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    int a = m.exponent(x);
    if (a <= b) {
      out.add_term(m, c);
    } else {
      out += Polynomial(m.without(x), c) * xi_power(a);
    }
  }
  return out;
}

Polynomial FactorRing::to_right_form(const Polynomial& p) const {
  for (const VarSymbol& v : p.variables())
    if (!is_allowed(v))
      throw std::invalid_argument(fmt::format("generator {} is not available in factor {} between rings {} and {}",
                                              v.to_string(), position_, left_, right_));
  return reduce(p.substitute(transport_));
}

namespace {

struct FactorRegistry {
  std::mutex mu;
  std::map<std::tuple<int, int, int, int>, std::unique_ptr<FactorRing>> rings;
};

}  // namespace

const FactorRing& factor_ring(int N, int left, int right, int position) {
  static FactorRegistry registry;
  std::lock_guard<std::mutex> lock(registry.mu);
  auto& slot = registry.rings[{N, left, right, position}];
  if (!slot) slot = std::make_unique<FactorRing>(N, left, right, position);
  return *slot;
}

const FactorRing& factor_ring(const FlagPath& path, int i) {
  return factor_ring(path.N(), path.rings()[i], path.rings()[i + 1], i + 1);
}

// -------------------------------------------------------------- BimElement

BimElement BimElement::basis_element(const FlagPath& path, const ExponentVector& e, const Polynomial& coefficient) {
  BimElement out(path);
  if (path.is_zero()) return out;
  if (static_cast<int>(e.size()) != path.length())
    throw std::invalid_argument("exponent vector length does not match the path");
  for (int i = 0; i < path.length(); ++i)
    if (e[i] < 0 || e[i] > path.bound(i))
      throw std::invalid_argument(fmt::format("exponent {} in factor {} exceeds bound {}", e[i], i + 1, path.bound(i)));
  out.add(e, coefficient);
  return out;
}

Polynomial BimElement::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Polynomial() : it->second;
}

void BimElement::add(const ExponentVector& e, const Polynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BimElement& BimElement::operator+=(const BimElement& o) {
  if (!path_.same_module(o.path_))
    throw std::invalid_argument(fmt::format("adding elements of {} and {}", path_.to_string(), o.path_.to_string()));
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

BimElement& BimElement::operator-=(const BimElement& o) {
  if (!path_.same_module(o.path_))
    throw std::invalid_argument(fmt::format("subtracting elements of {} and {}", path_.to_string(), o.path_.to_string()));
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

BimElement BimElement::operator*(const Rational& c) const {
  BimElement out(path_);
  if (c == 0) return out;
  for (const auto& [e, p] : terms_) out.terms_.emplace(e, p * c);
  return out;
}

DegreeInfo BimElement::degree() const {
  DegreeInfo info;
  for (const auto& [e, c] : terms_) {
    DegreeInfo d = c.homogeneous_degree();
    if (d.kind == DegreeInfo::Kind::Inhomogeneous) return d;
    int total = d.degree + basis_degree(e) + path_.shift();
    if (info.kind == DegreeInfo::Kind::AnyDegree) {
      info = {DegreeInfo::Kind::Homogeneous, total};
    } else if (info.degree != total) {
      return {DegreeInfo::Kind::Inhomogeneous, 0};
    }
  }
  return info;
}

std::string BimElement::to_string() const {
  if (terms_.empty()) return "0";
  if (path_.length() == 0) return terms_.begin()->second.to_string();
  std::string s;
  bool first = true;
  for (const auto& [e, coeff] : terms_) {
    std::vector<std::string> factors;
    for (int a : e) factors.push_back(a == 0 ? "1" : (a == 1 ? "xi" : fmt::format("xi^{}", a)));
    std::vector<std::pair<const Monomial*, const Rational*>> order;
    for (const auto& [m, c] : coeff.terms()) order.emplace_back(&m, &c);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first->degree() > b.first->degree(); });
    for (const auto& [m, c] : order) {
      std::vector<std::string> f = factors;
      if (!m->is_one()) f.back() = f.back() == "1" ? m->to_string() : f.back() + "*" + m->to_string();
      Rational mag = abs(*c);
      if (mag != 1) f.front() = f.front() == "1" ? catsl2::to_string(mag) : catsl2::to_string(mag) + "*" + f.front();
      bool negative = sgn(*c) < 0;
      if (first) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " | " : "") + f[i];
    }
  }
  return s;
}

// ------------------------------------------------------------ normal form

RawTensor RawTensor::monomial(const FlagPath& path, const ExponentVector& e) {
  RawTensor raw{path, {}, Polynomial::one()};
  for (int i = 0; i < path.length(); ++i) raw.factors.emplace_back(VarSymbol::xi(i + 1), e.at(i));
  return raw;
}

int basis_degree(const ExponentVector& e) { return 2 * std::accumulate(e.begin(), e.end(), 0); }

BimElement normalize(const RawTensor& raw) {
  const FlagPath& path = raw.path;
  BimElement out(path);
  if (path.is_zero()) return out;
  const int m = path.length();
  if (static_cast<int>(raw.factors.size()) != m)
    throw std::invalid_argument(
        fmt::format("raw tensor has {} factors but path {} has {}", raw.factors.size(), path.to_string(), m));

  // Sweep left to right: the carry at junction i is a polynomial in the ring k_i.
  std::map<ExponentVector, Polynomial> state{{ExponentVector{}, Polynomial::one()}};
  for (int i = 0; i < m; ++i) {
    const FactorRing& fr = factor_ring(path, i);
    Polynomial local = fr.to_right_form(raw.factors[i]);
    if (local.is_zero()) return out;
    VarSymbol xi = fr.xi();
    std::map<ExponentVector, Polynomial> next;
    for (const auto& [prefix, carry] : state) {
      Polynomial p = fr.reduce(fr.to_right_form(carry) * local);
      for (const auto& [mono, c] : p.terms()) {
        ExponentVector e = prefix;
        e.push_back(mono.exponent(xi));
        next[e].add_term(mono.without(xi), c);
      }
    }
    state.clear();
    for (auto& [e, c] : next)
      if (!c.is_zero()) state.emplace(e, std::move(c));
  }

  GrassContext end = path.right_context();
  if (!raw.tail.uses_only(end.generators()))
    throw std::invalid_argument(fmt::format("tail coefficient {} is not in the ring H_{}", raw.tail.to_string(), end.k));
  for (const auto& [e, c] : state) out.add(e, c * raw.tail);
  return out;
}

BimElement act(Side side, const Polynomial& r, const BimElement& e) {
  const FlagPath& path = e.path();
  if (path.is_zero()) return e;
  GrassContext ctx = side == Side::Left ? path.left_context() : path.right_context();
  if (!r.uses_only(ctx.generators()))
    throw std::invalid_argument(fmt::format("{} is not an element of the {} end ring H_{}", r.to_string(),
                                            side == Side::Left ? "left" : "right", ctx.k));
  BimElement out(path);
  if (side == Side::Right || path.length() == 0) {
    for (const auto& [ev, c] : e.terms()) out.add(ev, c * r);
    return out;
  }
  for (const auto& [ev, c] : e.terms()) {
    RawTensor raw = RawTensor::monomial(path, ev);
    raw.factors[0] *= r;
    raw.tail = c;
    out += normalize(raw);
  }
  return out;
}

BimElement tensor(const BimElement& a, const BimElement& b) {
  const FlagPath& pa = a.path();
  const FlagPath& pb = b.path();
  FlagPath path = pa.concat(pb);
  BimElement out(path);
  if (path.is_zero()) return out;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      ExponentVector e = ea;
      e.insert(e.end(), eb.begin(), eb.end());
      RawTensor raw = RawTensor::monomial(path, e);
      if (pb.length() == 0) {
        raw.tail = ca * cb;
      } else {
        raw.factors[pa.length()] *= ca;
        raw.tail = cb;
      }
      out += normalize(raw);
    }
  }
  return out;
}

std::vector<ExponentVector> basis(const FlagPath& path) {
  if (path.is_zero()) return {};
  std::vector<ExponentVector> out{ExponentVector{}};
  for (int i = 0; i < path.length(); ++i) {
    std::vector<ExponentVector> next;
    for (const auto& e : out)
      for (int a = 0; a <= path.bound(i); ++a) {
        ExponentVector f = e;
        f.push_back(a);
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  return out;
}

Laurent graded_rank(const FlagPath& path) {
  Laurent out;
  for (const auto& e : basis(path)) out.add(basis_degree(e) + path.shift(), 1);
  return out;
}

}  // namespace catsl2
