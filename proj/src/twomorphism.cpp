#include "catsl2/twomorphism.hpp"

#include <fmt/format.h>

#include <cctype>
#include <mutex>
#include <stdexcept>

namespace catsl2 {

// ------------------------------------------------------------------- words

SignedWord SignedWord::parse(const std::string& text, int weight) {
  SignedWord w;
  w.weight = weight;
  bool saw_one = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == 'E') {
      w.letters.push_back(Letter::E);
    } else if (c == 'F') {
      w.letters.push_back(Letter::F);
    } else if (c == '1') {
      saw_one = true;
    } else {
      throw std::invalid_argument(fmt::format("unexpected character '{}' in word \"{}\"", c, text));
    }
  }
  if (saw_one && !w.letters.empty()) throw std::invalid_argument("'1' denotes the empty word and cannot be mixed with letters");
  return w;
}

std::string SignedWord::letters_string() const {
  if (letters.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) s += (i ? " " : "") + std::string(letters[i] == Letter::E ? "E" : "F");
  return s;
}

int letter_shift(Letter letter, int N, int source_k, ShiftConvention convention) {
  if (letter == Letter::E) return 1 - N + source_k;
  return convention == ShiftConvention::SourceWeight ? 1 - source_k : 2 - source_k;
}

FlagPath compile_word(const SignedWord& w, int N, ShiftConvention convention) {
  if (N < 1) throw std::invalid_argument(fmt::format("N must be positive, got {}", N));
  if (((w.weight + N) % 2 + 2) % 2 != 0)
    throw std::invalid_argument(fmt::format("weight {} has the wrong parity for N = {}", w.weight, N));
  int k = (w.weight + N) / 2;
  std::vector<int> rings{k};
  int shift = 0;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    shift += letter_shift(*it, N, k, convention);
    k += *it == Letter::E ? 1 : -1;
    rings.insert(rings.begin(), k);
  }
  return FlagPath::make(N, std::move(rings), shift);
}

FlagPath path_of_rings(int N, const std::vector<int>& rings, ShiftConvention convention) {
  FlagPath p = FlagPath::make(N, rings, 0);
  int shift = 0;
  for (int i = 0; i < p.length(); ++i) shift += letter_shift(strand_letter(p, i), N, rings[i + 1], convention);
  return p.with_shift(shift);
}

Letter strand_letter(const FlagPath& path, int i) { return path.ascending(i) ? Letter::F : Letter::E; }

// ------------------------------------------------------------------ BimMap

struct BimMap::Cache {
  std::mutex mu;
  std::map<ExponentVector, BimElement> columns;
};

BimMap::BimMap(FlagPath domain, FlagPath codomain, int declared_degree, Column column, std::string label)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      degree_(declared_degree),
      column_(std::move(column)),
      label_(std::move(label)),
      cache_(std::make_shared<Cache>()) {
  if (domain_.N() != codomain_.N()) throw std::invalid_argument("domain and codomain use different N");
}

BimMap BimMap::identity(const FlagPath& path) {
  return BimMap(
      path, path, 0, [path](const ExponentVector& e) { return BimElement::basis_element(path, e); }, "id");
}

BimMap BimMap::zero(const FlagPath& domain, const FlagPath& codomain, int declared_degree) {
  return BimMap(
      domain, codomain, declared_degree, [codomain](const ExponentVector&) { return BimElement(codomain); }, "0");
}

BimElement BimMap::column(const ExponentVector& e) const {
  if (domain_.is_zero() || codomain_.is_zero()) return BimElement(codomain_);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->columns.find(e);
    if (it != cache_->columns.end()) return it->second;
  }
  BimElement value = column_(e);
  if (!value.path().same_module(codomain_))
    throw std::logic_error(fmt::format("map {} produced an element of {} instead of {}", label_,
                                       value.path().to_string(), codomain_.to_string()));
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->columns.emplace(e, std::move(value)).first->second;
}

BimElement BimMap::operator()(const BimElement& e) const {
  if (!e.path().same_module(domain_))
    throw std::invalid_argument(
        fmt::format("element of {} passed to a map with domain {}", e.path().to_string(), domain_.to_string()));
  BimElement out(codomain_);
  for (const auto& [b, c] : e.terms()) out += act(Side::Right, c, column(b));
  return out;
}

BimMap compose_vertical(const BimMap& f, const BimMap& g) {
  if (!(g.codomain() == f.domain()))
    throw std::invalid_argument(fmt::format("cannot compose: codomain {} does not match domain {}",
                                            g.codomain().to_string(), f.domain().to_string()));
  return BimMap(
      g.domain(), f.codomain(), f.declared_degree() + g.declared_degree(),
      [f, g](const ExponentVector& e) { return f(g.column(e)); }, f.label() + " . " + g.label());
}

BimMap whisker(const BimMap& f, const FlagPath& left, const FlagPath& right) {
  const FlagPath& fd = f.domain();
  const FlagPath& fc = f.codomain();
  if (left.right_ring() != fd.left_ring() || right.left_ring() != fd.right_ring() ||
      fc.left_ring() != fd.left_ring() || fc.right_ring() != fd.right_ring())
    throw std::invalid_argument(fmt::format("cannot splice {} -> {} between {} and {}", fd.to_string(),
                                            fc.to_string(), left.to_string(), right.to_string()));
  FlagPath domain = left.concat(fd).concat(right);
  FlagPath codomain = left.concat(fc).concat(right);
  const int L = left.length();
  const int c = fd.length();
  const int c_out = fc.length();
  const int R = right.length();
  return BimMap(
      domain, codomain, f.declared_degree(),
      [=](const ExponentVector& e) {
        BimElement out(codomain);
        ExponentVector middle(e.begin() + L, e.begin() + L + c);
        BimElement image = f.column(middle);
        for (const auto& [lc, p] : image.terms()) {
          ExponentVector g(e.begin(), e.begin() + L);
          g.insert(g.end(), lc.begin(), lc.end());
          g.insert(g.end(), e.begin() + L + c, e.end());
          RawTensor raw = RawTensor::monomial(codomain, g);
          if (R > 0) {
            raw.factors[L + c_out] *= p;
          } else {
            raw.tail = p;
          }
          out += normalize(raw);
        }
        return out;
      },
      f.label());
}

BimMap add_maps(const BimMap& f, const BimMap& g) {
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain()))
    throw std::invalid_argument("adding maps with different domain or codomain");
  if (f.declared_degree() != g.declared_degree())
    throw std::invalid_argument(
        fmt::format("adding maps of degrees {} and {}", f.declared_degree(), g.declared_degree()));
  return BimMap(
      f.domain(), f.codomain(), f.declared_degree(),
      [f, g](const ExponentVector& e) { return f.column(e) + g.column(e); }, f.label() + " + " + g.label());
}

BimMap scale_map(const Rational& c, const BimMap& f) {
  return BimMap(
      f.domain(), f.codomain(), f.declared_degree(), [c, f](const ExponentVector& e) { return f.column(e) * c; },
      to_string(c) + " " + f.label());
}

BimMap junction_multiply(const FlagPath& path, int junction, const Polynomial& r) {
  if (junction < 0 || junction > path.length()) throw std::invalid_argument("junction index out of range");
  DegreeInfo d = r.homogeneous_degree();
  if (d.kind == DegreeInfo::Kind::Inhomogeneous) throw std::invalid_argument("junction multiplier must be homogeneous");
  if (!path.is_zero()) {
    GrassContext ctx = GrassContext::make(path.N(), path.rings()[junction]);
    if (!r.uses_only(ctx.generators()))
      throw std::invalid_argument(fmt::format("{} is not in the junction ring H_{}", r.to_string(), ctx.k));
  }
  const int m = path.length();
  return BimMap(
      path, path, d.degree,
      [=](const ExponentVector& e) {
        RawTensor raw = RawTensor::monomial(path, e);
        if (junction == m) {
          raw.tail = r;
        } else {
          raw.factors[junction] *= r;
        }
        return normalize(raw);
      },
      "mult");
}

// -------------------------------------------------------- local generators

namespace {

BimMap with_shifts(const BimMap& f, int domain_shift, int codomain_shift) {
  return BimMap(
      f.domain().with_shift(domain_shift), f.codomain().with_shift(codomain_shift), f.declared_degree(),
      [f](const ExponentVector& e) { return f.column(e); }, f.label());
}

RawTensor pure_tensor(const FlagPath& path, const ExponentVector& e, int factor, const Polynomial& extra) {
  RawTensor raw = RawTensor::monomial(path, e);
  raw.factors[factor] *= extra;
  return raw;
}

}  // namespace

BimMap local_dot(int N, int left, int right) {
  FlagPath p = path_of_rings(N, {left, right});
  return BimMap(
      p, p, 2, [p](const ExponentVector& e) { return normalize(RawTensor::monomial(p, {e[0] + 1})); },
      strand_letter(p, 0) == Letter::E ? "dot_e" : "dot_f");
}

BimElement crossing_formula(CrossingKind kind, const FlagPath& local, int m1, int m2) {
  BimElement out(local);
  if (local.is_zero()) return out;
  Rational sign = kind == CrossingKind::Upward ? 1 : -1;
  for (int j = 0; j < m1; ++j) out += normalize(RawTensor::monomial(local, {m1 + m2 - 1 - j, j})) * sign;
  for (int j = 0; j < m2; ++j) out -= normalize(RawTensor::monomial(local, {m1 + m2 - 1 - j, j})) * sign;
  return out;
}

BimMap local_crossing(CrossingKind kind, int N, int right_k) {
  int d = kind == CrossingKind::Upward ? 1 : -1;
  FlagPath p = path_of_rings(N, {right_k + 2 * d, right_k + d, right_k});
  return BimMap(
      p, p, -2, [kind, p](const ExponentVector& e) { return crossing_formula(kind, p, e[0], e[1]); },
      kind == CrossingKind::Upward ? "cross_ee" : "cross_ff");
}

BimMap local_cup(CupKind kind, int N, int k) {
  GrassContext ctx = GrassContext::make(N, k);
  FlagPath dom = path_of_rings(N, {k});
  if (kind == CupKind::FE) {
    FlagPath cod = path_of_rings(N, {k, k + 1, k});
    return BimMap(
        dom, cod, ctx.n() + 1,
        [ctx, cod](const ExponentVector&) {
          BimElement out(cod);
          for (int j = 0; j <= ctx.k; ++j)
            out += normalize(pure_tensor(cod, {0, ctx.k - j}, 0, neg_one_pow(j) * ctx.x(j)));
          return out;
        },
        "cup_fe");
  }
  FlagPath cod = path_of_rings(N, {k, k - 1, k});
  return BimMap(
      dom, cod, 1 - ctx.n(),
      [ctx, cod](const ExponentVector&) {
        BimElement out(cod);
        for (int j = 0; j <= ctx.N - ctx.k; ++j)
          out += normalize(pure_tensor(cod, {0, ctx.N - ctx.k - j}, 0, neg_one_pow(j) * ctx.y(j)));
        return out;
      },
      "cup_ef");
}

Polynomial cap_formula(CupKind kind, int N, int k, int m1, int m2) {
  GrassContext ctx = GrassContext::make(N, k);
  int m = m1 + m2;
  if (kind == CupKind::FE) return neg_one_pow(m + k - N + 1) * special_class(ctx, Family::X, m + 1 + k - N);
  return neg_one_pow(m + 1 - k) * special_class(ctx, Family::Y, m + 1 - k);
}

BimMap local_cap(CupKind kind, int N, int k) {
  GrassContext ctx = GrassContext::make(N, k);
  FlagPath cod = path_of_rings(N, {k});
  FlagPath dom = path_of_rings(N, {k, kind == CupKind::FE ? k + 1 : k - 1, k});
  int degree = kind == CupKind::FE ? ctx.n() + 1 : 1 - ctx.n();
  return BimMap(
      dom, cod, degree,
      [kind, N, k, cod](const ExponentVector& e) {
        return BimElement::basis_element(cod, {}, cap_formula(kind, N, k, e[0], e[1]));
      },
      kind == CupKind::FE ? "cap_fe" : "cap_ef");
}

// ------------------------------------------------------ whiskered versions

namespace {

BimMap place(const BimMap& local, const FlagPath& ambient, int from, int to) {
  FlagPath left = ambient.slice(0, from);
  FlagPath right = ambient.slice(to, ambient.length());
  BimMap w = whisker(local, left, right);
  int delta = local.codomain().shift() - local.domain().shift();
  return with_shifts(w, ambient.shift(), ambient.shift() + delta);
}

}  // namespace

BimMap gen_dot(const FlagPath& ambient, int position) {
  if (position < 0 || position >= ambient.length())
    throw std::invalid_argument(fmt::format("no strand at position {} in {}", position, ambient.to_string()));
  const auto& r = ambient.rings();
  if (ambient.is_zero()) return BimMap::zero(ambient, ambient, 2);
  return place(local_dot(ambient.N(), r[position], r[position + 1]), ambient, position, position + 1);
}

BimMap gen_crossing(CrossingKind kind, const FlagPath& ambient, int position) {
  if (position < 0 || position + 1 >= ambient.length())
    throw std::invalid_argument(fmt::format("no strand pair at position {} in {}", position, ambient.to_string()));
  Letter want = kind == CrossingKind::Upward ? Letter::E : Letter::F;
  if (strand_letter(ambient, position) != want || strand_letter(ambient, position + 1) != want)
    throw std::invalid_argument(fmt::format("{} crossing needs two {} strands at position {}",
                                            kind == CrossingKind::Upward ? "upward" : "downward",
                                            want == Letter::E ? "E" : "F", position));
  if (ambient.is_zero()) return BimMap::zero(ambient, ambient, -2);
  return place(local_crossing(kind, ambient.N(), ambient.rings()[position + 2]), ambient, position, position + 2);
}

BimMap gen_cup(CupKind kind, const FlagPath& ambient, int junction) {
  if (junction < 0 || junction > ambient.length())
    throw std::invalid_argument(fmt::format("no junction {} in {}", junction, ambient.to_string()));
  int k = ambient.rings()[junction];
  if (ambient.is_zero()) {
    std::vector<int> r = ambient.rings();
    r.insert(r.begin() + junction + 1, {kind == CupKind::FE ? k + 1 : k - 1, k});
    GrassContext ghost{ambient.N(), k};
    int degree = kind == CupKind::FE ? ghost.n() + 1 : 1 - ghost.n();
    return BimMap::zero(ambient, FlagPath::make(ambient.N(), r, ambient.shift() + 1 - ambient.N()), degree);
  }
  return place(local_cup(kind, ambient.N(), k), ambient, junction, junction);
}

BimMap gen_cap(CupKind kind, const FlagPath& ambient, int position) {
  if (position < 0 || position + 1 >= ambient.length())
    throw std::invalid_argument(fmt::format("no strand pair at position {} in {}", position, ambient.to_string()));
  const auto& r = ambient.rings();
  int k = r[position];
  int mid = kind == CupKind::FE ? k + 1 : k - 1;
  if (r[position + 1] != mid || r[position + 2] != k)
    throw std::invalid_argument(fmt::format("{} cap needs the excursion ({},{},{}) at position {}",
                                            kind == CupKind::FE ? "FE" : "EF", k, mid, k, position));
  if (ambient.is_zero()) {
    std::vector<int> rr = r;
    rr.erase(rr.begin() + position + 1, rr.begin() + position + 3);
    GrassContext ghost{ambient.N(), k};
    int degree = kind == CupKind::FE ? ghost.n() + 1 : 1 - ghost.n();
    return BimMap::zero(ambient, FlagPath::make(ambient.N(), rr, ambient.shift() - 1 + ambient.N()), degree);
  }
  return place(local_cap(kind, ambient.N(), k), ambient, position, position + 2);
}

// ------------------------------------------------------- audit & equality

DegreeInfo measured_degree(const BimMap& f) {
  DegreeInfo info;
  for (const auto& b : basis(f.domain())) {
    DegreeInfo img = f.column(b).degree();
    if (img.kind == DegreeInfo::Kind::AnyDegree) continue;
    if (img.kind == DegreeInfo::Kind::Inhomogeneous) return img;
    int d = img.degree - (basis_degree(b) + f.domain().shift());
    if (info.kind == DegreeInfo::Kind::AnyDegree) {
      info = {DegreeInfo::Kind::Homogeneous, d};
    } else if (info.degree != d) {
      return {DegreeInfo::Kind::Inhomogeneous, 0};
    }
  }
  return info;
}

namespace {

std::string exponent_string(const ExponentVector& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

BimElement random_element(const FlagPath& path, std::mt19937_64& rng) {
  BimElement e(path);
  auto b = basis(path);
  if (b.empty()) return e;
  GrassContext right = path.right_context();
  int count = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int i = 0; i < count; ++i) {
    const auto& v = b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)];
    e.add(v, random_ring_element(right, rng, 2, 2));
  }
  return e;
}

}  // namespace

Polynomial random_ring_element(const GrassContext& ctx, std::mt19937_64& rng, int max_terms, int max_degree) {
  auto gens = ctx.generators();
  Polynomial p;
  int terms = std::uniform_int_distribution<int>(1, max_terms)(rng);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int factors = gens.empty() ? 0 : std::uniform_int_distribution<int>(0, max_degree)(rng);
    for (int f = 0; f < factors; ++f) {
      const VarSymbol& v = gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)];
      m = m.times(Monomial(v));
    }
    long c = std::uniform_int_distribution<long>(-3, 3)(rng);
    p.add_term(m, Rational(c == 0 ? 1 : c));
  }
  return p;
}

std::optional<std::string> check_bimodule_law(const BimMap& f, int samples, std::uint64_t seed) {
  if (f.domain().is_zero()) return std::nullopt;
  std::mt19937_64 rng(seed);
  GrassContext left = f.domain().left_context();
  GrassContext right = f.domain().right_context();
  for (int s = 0; s < samples; ++s) {
    BimElement e = random_element(f.domain(), rng);
    Polynomial r = random_ring_element(left, rng);
    Polynomial r2 = random_ring_element(right, rng);
    BimElement lhs = f(act(Side::Left, r, act(Side::Right, r2, e)));
    BimElement rhs = f.codomain().is_zero() ? BimElement(f.codomain()) : act(Side::Left, r, act(Side::Right, r2, f(e)));
    if (!(lhs == rhs))
      return fmt::format("f(r e r') != r f(e) r' for r = {}, e = {}, r' = {}; difference {}", r.to_string(),
                         e.to_string(), r2.to_string(), (lhs - rhs).to_string());
  }
  return std::nullopt;
}

MapComparison map_equals(const BimMap& f, const BimMap& g, int max_extra_checks, std::uint64_t seed) {
  MapComparison out;
  if (!f.domain().same_module(g.domain()) || !f.codomain().same_module(g.codomain())) {
    out.equal = false;
    out.report = fmt::format("shape mismatch: {} -> {} vs {} -> {}", f.domain().to_string(), f.codomain().to_string(),
                             g.domain().to_string(), g.codomain().to_string());
    return out;
  }
  for (const auto& b : basis(f.domain())) {
    BimElement a = f.column(b);
    BimElement c = g.column(b);
    if (!(a == c)) {
      out.equal = false;
      out.report = fmt::format("images of basis vector {} differ", exponent_string(b));
      out.counterexample = fmt::format("at {}: lhs = {}; rhs = {}", exponent_string(b), a.to_string(), c.to_string());
      return out;
    }
  }
  if (max_extra_checks > 0 && !f.domain().is_zero()) {
    // spanning elements with xi-excess up to 2 above each bound, reduced by the rewriting rules first
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const FlagPath& p = f.domain();
    for (int s = 0; s < max_extra_checks; ++s) {
      RawTensor raw{p, {}, random_ring_element(p.right_context(), rng, 2, 2)};
      for (int i = 0; i < p.length(); ++i)
        raw.factors.push_back(Polynomial(VarSymbol::xi(i + 1), std::uniform_int_distribution<int>(0, p.bound(i) + 2)(rng)));
      BimElement e = act(Side::Left, random_ring_element(p.left_context(), rng), normalize(raw));
      BimElement a = f(e), c = g(e);
      if (!(a == c)) {
        out.equal = false;
        out.report = fmt::format("images of {} differ", e.to_string());
        out.counterexample = fmt::format("at {}: lhs = {}; rhs = {}", e.to_string(), a.to_string(), c.to_string());
        return out;
      }
    }
  }
  if (max_extra_checks > 0) {
    for (const BimMap* h : {&f, &g}) {
      if (auto failure = check_bimodule_law(*h, max_extra_checks, seed)) {
        out.equal = false;
        out.report = "bimodule law failed";
        out.counterexample = *failure;
        return out;
      }
    }
  }
  return out;
}

}  // namespace catsl2
