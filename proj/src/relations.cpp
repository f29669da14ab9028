#include "catsl2/relations.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <stdexcept>
#include <thread>

#include "catsl2/diagram.hpp"

namespace catsl2 {

namespace {

// ---------------------------------------------------------------- helpers

std::vector<int> range(int a, int b) {
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}

FlagPath word(int N, const std::string& letters, int k) { return compile_word(SignedWord::parse(letters, 2 * k - N), N); }

BimMap diagram(const FlagPath& domain, const std::vector<std::string>& layers) { return compile_layers(domain, layers); }

BimMap dots(const FlagPath& path, int position, int count) {
  BimMap f = BimMap::identity(path);
  for (int i = 0; i < count; ++i) f = compose_vertical(gen_dot(f.codomain(), position), f);
  return f;
}

BimMap sum_maps(const std::vector<BimMap>& terms, const FlagPath& domain, const FlagPath& codomain, int degree) {
  BimMap total = BimMap::zero(domain, codomain, degree);
  for (const auto& t : terms) total = add_maps(total, t);
  return total;
}

BimElement mono(const FlagPath& path, const ExponentVector& e) { return normalize(RawTensor::monomial(path, e)); }

BimElement one(const FlagPath& path) { return BimElement::basis_element(path, ExponentVector(path.length(), 0)); }

Polynomial bubble(int N, int k, Orientation o, int alpha) { return bubble_value(GrassContext::make(N, k), o, alpha); }

// Multiplication by a bubble at the left end of an identity path; a vanishing bubble keeps its degree.
BimMap bubble_map(const FlagPath& p, Orientation o, int alpha) {
  Polynomial v = bubble(p.N(), p.left_ring(), o, alpha);
  if (v.is_zero()) return BimMap::zero(p, p, 2 * alpha);
  return junction_multiply(p, 0, v);
}

std::uint64_t task_seed(const SuiteOptions& options, const std::string& name, int N, int k) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return options.seed ^ h ^ (static_cast<std::uint64_t>(N) << 40) ^ (static_cast<std::uint64_t>(k + 64) << 20);
}

std::string exps(const ExponentVector& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

// A generator together with its table degree at the context where it is built.
struct Generator {
  std::string name;
  BimMap map;
  int table_degree;
};

std::vector<Generator> generators_at(int N, int k) {
  const int n = 2 * k - N;
  std::vector<Generator> g;
  if (k <= N - 1) {
    FlagPath e = word(N, "E", k);
    g.push_back({"dot_e", gen_dot(e, 0), 2});
    g.push_back({"cup_fe", gen_cup(CupKind::FE, FlagPath::identity(N, k), 0), n + 1});
    g.push_back({"cap_fe", gen_cap(CupKind::FE, word(N, "F E", k), 0), n + 1});
  }
  if (k >= 1) {
    FlagPath f = word(N, "F", k);
    g.push_back({"dot_f", gen_dot(f, 0), 2});
    g.push_back({"cup_ef", gen_cup(CupKind::EF, FlagPath::identity(N, k), 0), 1 - n});
    g.push_back({"cap_ef", gen_cap(CupKind::EF, word(N, "E F", k), 0), 1 - n});
  }
  if (k <= N - 2) g.push_back({"cross_ee", gen_crossing(CrossingKind::Upward, word(N, "E E", k), 0), -2});
  if (k >= 2) g.push_back({"cross_ff", gen_crossing(CrossingKind::Downward, word(N, "F F", k), 0), -2});
  return g;
}

// ------------------------------------------------------------- (a) to (g)

CheckBody single(std::string label, BimMap lhs, BimMap rhs) {
  CheckBody b;
  b.maps.push_back({std::move(label), std::move(lhs), std::move(rhs)});
  return b;
}

CheckBody bubble_closed_formula(int N, int k) {
  CheckBody b;
  const int n = 2 * k - N;
  FlagPath p = FlagPath::identity(N, k);
  if (k >= 1) {
    for (int m = 0; m <= n - 1 + 2 * N + 2; ++m) {
      std::vector<std::string> layers{"cup_ef"};
      for (int i = 0; i < m; ++i) layers.push_back("dot_e id_f");
      layers.push_back("cap_ef");
      b.maps.push_back({fmt::format("cw bubble, {} dots", m), diagram(p, layers),
                        bubble_map(p, Orientation::Clockwise, m - (n - 1))});
    }
  }
  if (k <= N - 1) {
    for (int m = 0; m <= -n - 1 + 2 * N + 2; ++m) {
      std::vector<std::string> layers{"cup_fe"};
      for (int i = 0; i < m; ++i) layers.push_back("dot_f id_e");
      layers.push_back("cap_fe");
      b.maps.push_back({fmt::format("ccw bubble, {} dots", m), diagram(p, layers),
                        bubble_map(p, Orientation::CounterClockwise, m - (-n - 1))});
    }
  }
  return b;
}

CheckBody bubble_negative(int N, int k, Orientation o) {
  CheckBody b;
  const int n = 2 * k - N;
  FlagPath p = FlagPath::identity(N, k);
  const bool cw = o == Orientation::Clockwise;
  const int threshold = cw ? n - 1 : -n - 1;  // dots giving degree 0
  for (int m = 0; m < threshold; ++m) {
    std::vector<std::string> layers{cw ? "cup_ef" : "cup_fe"};
    for (int i = 0; i < m; ++i) layers.push_back(cw ? "dot_e id_f" : "dot_f id_e");
    layers.push_back(cw ? "cap_ef" : "cap_fe");
    b.maps.push_back({fmt::format("{} bubble, {} dots", cw ? "cw" : "ccw", m), diagram(p, layers), BimMap::zero(p, p, 2 * (m - threshold))});
  }
  if (b.maps.empty()) b.note = "no bubble of negative degree has a nonnegative dot count here";
  return b;
}

CheckBody bubble_unit(int N, int k) {
  CheckBody b;
  const int n = 2 * k - N;
  FlagPath p = FlagPath::identity(N, k);
  std::vector<std::string> notes;
  if (n - 1 >= 0) {
    std::vector<std::string> layers{"cup_ef"};
    for (int i = 0; i < n - 1; ++i) layers.push_back("dot_e id_f");
    layers.push_back("cap_ef");
    b.maps.push_back({"cw degree 0", diagram(p, layers), BimMap::identity(p)});
    notes.push_back("cw diagram = 1");
  } else {
    Polynomial v = bubble(N, k, Orientation::Clockwise, 0);
    if (!(v == Polynomial::one())) b.failures.push_back("fake cw bubble of degree 0 is " + v.to_string());
    notes.push_back("cw fake = " + v.to_string());
  }
  if (-n - 1 >= 0) {
    std::vector<std::string> layers{"cup_fe"};
    for (int i = 0; i < -n - 1; ++i) layers.push_back("dot_f id_e");
    layers.push_back("cap_fe");
    b.maps.push_back({"ccw degree 0", diagram(p, layers), BimMap::identity(p)});
    notes.push_back("ccw diagram = 1");
  } else {
    Polynomial v = bubble(N, k, Orientation::CounterClockwise, 0);
    if (!(v == Polynomial::one())) b.failures.push_back("fake ccw bubble of degree 0 is " + v.to_string());
    notes.push_back("ccw fake = " + v.to_string());
  }
  b.note = fmt::format("{}", fmt::join(notes, "; "));
  return b;
}

CheckBody fake_bubble_series(int N, int k) {
  CheckBody b;
  GrassContext ctx = GrassContext::make(N, k);
  const int D = 2 * N;
  SeriesCheck product = check_series_identity(ctx, SeriesIdentity::BubbleProduct, D);
  if (!product.ok) b.failures.push_back("cw * ccw != 1: " + product.report);
  std::vector<Polynomial> cw;
  for (int a = 0; a <= D; ++a) cw.push_back(bubble_value(ctx, Orientation::Clockwise, a));
  std::vector<Polynomial> inverse = series_invert(cw, D);
  for (int a = 0; a <= D; ++a) {
    Polynomial closed = bubble_value(ctx, Orientation::CounterClockwise, a);
    if (!(inverse[a] == closed)) {
      b.failures.push_back(fmt::format("series inverse of cw differs from the ccw closed formula at alpha = {}", a));
      b.counterexample = fmt::format("inverse: {}; closed: {}", inverse[a].to_string(), closed.to_string());
      break;
    }
  }
  return b;
}

CheckBody exchange(const FlagPath& p, CrossingKind kind) {
  CheckBody b;
  BimMap U = gen_crossing(kind, p, 0);
  BimMap zl = gen_dot(p, 0);
  BimMap zr = gen_dot(p, 1);
  BimMap id = BimMap::identity(p);
  if (kind == CrossingKind::Upward) {
    b.maps.push_back({"U zL - zR U", add_maps(compose_vertical(U, zl), scale_map(-1, compose_vertical(zr, U))), id});
    b.maps.push_back({"zL U - U zR", add_maps(compose_vertical(zl, U), scale_map(-1, compose_vertical(U, zr))), id});
  } else {
    b.maps.push_back({"zR U - U zL", add_maps(compose_vertical(zr, U), scale_map(-1, compose_vertical(U, zl))), id});
    b.maps.push_back({"U zR - zL U", add_maps(compose_vertical(U, zr), scale_map(-1, compose_vertical(zl, U))), id});
  }
  return b;
}

CheckBody braid(const FlagPath& p, CrossingKind kind) {
  BimMap a = gen_crossing(kind, p, 0);
  BimMap c = gen_crossing(kind, p, 1);
  return single("U1 U2 U1 = U2 U1 U2", compose_vertical(a, compose_vertical(c, a)), compose_vertical(c, compose_vertical(a, c)));
}

CheckBody right_curl(int N, int k) {
  const int n = 2 * k - N;
  FlagPath p = word(N, "E", k);
  BimMap lhs = diagram(p, {"id_e cup_ef", "cross_ee id_f", "id_e cap_ef"});
  std::vector<BimMap> terms;
  for (int l = 0; l <= -n; ++l)
    terms.push_back(scale_map(-1, compose_vertical(dots(p, 0, -n - l), junction_multiply(p, 1, bubble(N, k, Orientation::Clockwise, l)))));
  return single("right curl", lhs, sum_maps(terms, p, p, -2 * n));
}

CheckBody left_curl(int N, int k) {
  const int n = 2 * (k + 1) - N;  // left region
  FlagPath p = word(N, "E", k);
  BimMap lhs = diagram(p, {"cup_fe id_e", "id_f cross_ee", "cap_fe id_e"});
  std::vector<BimMap> terms;
  for (int j = 0; j <= n; ++j)
    terms.push_back(compose_vertical(junction_multiply(p, 0, bubble(N, k + 1, Orientation::CounterClockwise, j)), dots(p, 0, n - j)));
  return single("left curl", lhs, sum_maps(terms, p, p, 2 * n));
}

CheckBody identity_fe(int N, int k) {
  const int n = 2 * (k + 1) - N;  // middle region
  FlagPath p = word(N, "F E", k);
  BimMap lhs = diagram(p, {"cap_fe", "cup_fe"});
  BimMap square = scale_map(-1, diagram(p, {"id_f cup_fe id_e", "cross_ff cross_ee", "id_f cap_fe id_e"}));
  std::vector<BimMap> terms{square};
  for (int l = 0; l <= n - 1; ++l) {
    for (int j = 0; j <= l; ++j) {
      BimMap d = compose_vertical(dots(p, 0, n - 1 - l), dots(p, 1, l - j));
      terms.push_back(compose_vertical(junction_multiply(p, 1, bubble(N, k + 1, Orientation::CounterClockwise, j)), d));
    }
  }
  return single("cup cap on F E", lhs, sum_maps(terms, p, p, lhs.declared_degree()));
}

CheckBody identity_ef(int N, int k) {
  const int n = 2 * (k - 1) - N;  // middle region
  FlagPath p = word(N, "E F", k);
  BimMap lhs = diagram(p, {"cap_ef", "cup_ef"});
  BimMap square = scale_map(-1, diagram(p, {"id_e cup_ef id_f", "cross_ee cross_ff", "id_e cap_ef id_f"}));
  std::vector<BimMap> terms{square};
  for (int l = 0; l <= -n - 1; ++l) {
    for (int j = 0; j <= l; ++j) {
      BimMap d = compose_vertical(dots(p, 0, -n - 1 - l), dots(p, 1, l - j));
      terms.push_back(compose_vertical(junction_multiply(p, 1, bubble(N, k - 1, Orientation::Clockwise, j)), d));
    }
  }
  return single("cup cap on E F", lhs, sum_maps(terms, p, p, lhs.declared_degree()));
}

// -------------------------------------------------------------------- (h)

enum class SlideKind { X, Y, dY, dX };

CheckBody ring_relation(int N, int k, SlideKind kind) {
  CheckBody b;
  const int n = 2 * k - N;
  GrassContext lo = GrassContext::make(N, k);
  GrassContext hi = GrassContext::make(N, k + 1);
  FlagPath p = FlagPath::make(N, {k, k + 1});
  BimElement unit = one(p);
  for (int a = 0; a <= 2 * N + 2; ++a) {
    BimElement lhs(p), rhs(p);
    switch (kind) {
      case SlideKind::X:
        lhs = act(Side::Left, special_class(lo, Family::X, a), unit);
        for (int l = 0; l <= a; ++l) rhs += act(Side::Right, neg_one_pow(l) * special_class(hi, Family::X, a - l), mono(p, {l}));
        break;
      case SlideKind::Y:
        lhs = act(Side::Right, special_class(hi, Family::Y, a), unit);
        for (int l = 0; l <= a; ++l) rhs += act(Side::Left, neg_one_pow(l) * special_class(lo, Family::Y, a - l), mono(p, {l}));
        break;
      case SlideKind::dY:
        lhs = mono(p, {a});
        for (int j = 0; j <= a; ++j)
          rhs += act(Side::Left, neg_one_pow(a) * lo.x(a - j), act(Side::Right, special_class(hi, Family::Y, j), unit));
        break;
      case SlideKind::dX:
        lhs = mono(p, {a});
        for (int j = 0; j <= a; ++j)
          rhs += act(Side::Left, neg_one_pow(a) * special_class(lo, Family::X, a - j), act(Side::Right, hi.y(j), unit));
        break;
    }
    b.elements.push_back({fmt::format("alpha = {} (n = {})", a, n), lhs, rhs});
  }
  return b;
}

CheckBody two_sided(int N, int k, bool x_family) {
  CheckBody b;
  GrassContext ctx = GrassContext::make(N, k);
  FlagPath p = FlagPath::make(N, {k, x_family ? k + 1 : k - 1, k});
  for (int a = 0; a <= 2 * N; ++a) {
    BimElement lhs(p), rhs(p);
    for (int j = 0; j <= a; ++j) {
      Polynomial g = x_family ? ctx.x(j) : ctx.y(j);
      lhs += act(Side::Left, neg_one_pow(j) * g, mono(p, {0, a - j}));
      rhs += act(Side::Right, neg_one_pow(j) * g, mono(p, {a - j, 0}));
    }
    b.elements.push_back({fmt::format("alpha = {}", a), lhs, rhs});
  }
  return b;
}

CheckBody dot_slide_prop(int N, int k, bool x_family) {
  CheckBody b;
  GrassContext ctx = GrassContext::make(N, k);
  BimElement lhs, rhs;
  if (x_family) {
    FlagPath p = FlagPath::make(N, {k, k + 1, k});
    lhs = rhs = BimElement(p);
    for (int l = 0; l <= k; ++l) {
      lhs += act(Side::Right, neg_one_pow(l) * ctx.x(l), mono(p, {k - l + 1, 0}));
      rhs += act(Side::Right, neg_one_pow(l) * ctx.x(l), mono(p, {k - l, 1}));
    }
  } else {
    FlagPath p = FlagPath::make(N, {k, k - 1, k});
    lhs = rhs = BimElement(p);
    for (int j = 0; j <= N - k; ++j) {
      lhs += act(Side::Left, neg_one_pow(j) * ctx.y(j), mono(p, {1, N - k - j}));
      rhs += act(Side::Left, neg_one_pow(j) * ctx.y(j), mono(p, {0, N - k - j + 1}));
    }
  }
  b.elements.push_back({x_family ? "x sum on (k,k+1,k)" : "y sum on (k,k-1,k)", lhs, rhs});
  return b;
}

CheckBody series(int N, int k, SeriesIdentity which) {
  CheckBody b;
  SeriesCheck r = check_series_identity(GrassContext::make(N, k), which, 2 * N);
  if (!r.ok) b.failures.push_back(r.report);
  return b;
}

// ---------------------------------------------------------------- (i)-(l)

void audit_map(const std::string& label, const BimMap& f, int expected, CheckBody& b) {
  if (f.declared_degree() != expected)
    b.failures.push_back(fmt::format("{}: declared degree {} but the table gives {}", label, f.declared_degree(), expected));
  DegreeInfo d = measured_degree(f);
  if (d.kind == DegreeInfo::Kind::Inhomogeneous) {
    b.failures.push_back(fmt::format("{}: not homogeneous", label));
  } else if (d.kind == DegreeInfo::Kind::Homogeneous && d.degree != expected) {
    b.failures.push_back(fmt::format("{}: measured degree {}, table degree {}", label, d.degree, expected));
  }
}

CheckBody degree_audit_generators(int N, int k) {
  CheckBody b;
  std::vector<std::string> seen;
  for (const auto& g : generators_at(N, k)) {
    if (measured_degree(g.map).kind == DegreeInfo::Kind::AnyDegree) b.failures.push_back(g.name + " is the zero map");
    audit_map(g.name, g.map, g.table_degree, b);
    seen.push_back(fmt::format("{} {}", g.name, g.table_degree));
  }
  b.note = fmt::format("{}", fmt::join(seen, ", "));
  return b;
}

CheckBody bimodule_law(int N, int k, const SuiteOptions& options) {
  CheckBody b;
  std::uint64_t seed = task_seed(options, "bimodule_law", N, k);
  for (const auto& g : generators_at(N, k)) {
    if (auto failure = check_bimodule_law(g.map, options.law_samples, seed++)) {
      b.failures.push_back(g.name + ": " + *failure);
      if (!b.counterexample) b.counterexample = *failure;
    }
  }
  b.note = fmt::format("{} samples per generator", options.law_samples);
  return b;
}

// The displayed formulas only depend on exponents through the map's definition on the basis;
// evaluating them on unreduced exponents must agree with the map applied to the normal form.
CheckBody unbounded_exponents(int N, int k) {
  CheckBody b;
  for (const auto& g : generators_at(N, k)) {
    const FlagPath& dom = g.map.domain();
    if (dom.length() == 0) continue;
    std::vector<ExponentVector> vs{{}};
    for (int i = 0; i < dom.length(); ++i) {
      std::vector<ExponentVector> next;
      for (const auto& v : vs)
        for (int a = 0; a <= dom.bound(i) + 2; ++a) {
          ExponentVector w = v;
          w.push_back(a);
          next.push_back(w);
        }
      vs = std::move(next);
    }
    for (const auto& v : vs) {
      BimElement via_normal_form = g.map(mono(dom, v));
      BimElement direct;
      if (g.name == "dot_e" || g.name == "dot_f") {
        direct = mono(dom, {v[0] + 1});
      } else if (g.name == "cross_ee" || g.name == "cross_ff") {
        direct = crossing_formula(g.name == "cross_ee" ? CrossingKind::Upward : CrossingKind::Downward, g.map.codomain(), v[0], v[1]);
      } else if (g.name == "cap_fe" || g.name == "cap_ef") {
        direct = BimElement::basis_element(g.map.codomain(), {},
                                           cap_formula(g.name == "cap_fe" ? CupKind::FE : CupKind::EF, N, k, v[0], v[1]));
      } else {
        continue;
      }
      b.elements.push_back({fmt::format("{} on {}", g.name, exps(v)), via_normal_form, direct});
    }
  }
  return b;
}

CheckBody non_nilpotent(int N, int k) {
  CheckBody b;
  std::vector<FlagPath> paths;
  if (k <= N - 1) paths.push_back(word(N, "E", k));
  if (k >= 1) paths.push_back(word(N, "F", k));
  for (const auto& p : paths) {
    BimMap dot = gen_dot(p, 0);
    BimElement e = one(p);
    for (int M = 1; M <= 4 * N; ++M) {
      e = dot(e);
      if (e.is_zero()) {
        b.failures.push_back(fmt::format("dot^{} kills 1 on {}", M, p.to_string()));
        break;
      }
    }
  }
  b.note = fmt::format("dot^M(1) != 0 for M <= {}", 4 * N);
  return b;
}

CheckBody k0_shadow(int N, int k) {
  CheckBody b;
  const int n = 2 * k - N;
  Laurent expected = quantum_integer(n);
  Laurent primary = k0_difference(N, n, ShiftConvention::SourceWeight);
  Laurent alternative = k0_difference(N, n, ShiftConvention::LowerRing);
  if (!(primary == expected))
    b.failures.push_back(fmt::format("EF - FE = {} but [{}] = {}", primary.to_string(), n, expected.to_string()));
  b.note = fmt::format("[{}] = {}; source-weight shifts give {}; lower-ring shifts give {}{}", n, expected.to_string(),
                       primary.to_string(), alternative.to_string(),
                       alternative == expected ? "" : " (flagged: lower-ring convention fails)");
  return b;
}

// --------------------------------------------------------------- registry

std::function<std::vector<int>(int)> ks(int from_bottom, int from_top) {
  return [=](int N) { return range(from_bottom, N - from_top); };
}

std::vector<CheckSpec> make_registry() {
  std::vector<CheckSpec> r;
  auto add = [&](std::string suite, std::string name, std::function<std::vector<int>(int)> contexts,
                 std::function<CheckBody(int, int, const SuiteOptions&)> build,
                 std::function<std::optional<std::string>(int)> skip = {}) {
    r.push_back({suite + "." + name, suite, std::move(contexts), std::move(skip), std::move(build)});
  };
  using O = const SuiteOptions&;

  add("biadjointness", "zigzag_e_right", ks(0, 1), [](int N, int k, O) {
    FlagPath p = word(N, "E", k);
    return single("(cap_ef id_e)(id_e cup_fe)", diagram(p, {"id_e cup_fe", "cap_ef id_e"}), BimMap::identity(p));
  });
  add("biadjointness", "zigzag_e_left", ks(0, 1), [](int N, int k, O) {
    FlagPath p = word(N, "E", k);
    return single("(id_e cap_fe)(cup_ef id_e)", diagram(p, {"cup_ef id_e", "id_e cap_fe"}), BimMap::identity(p));
  });
  add("biadjointness", "zigzag_f_right", ks(1, 0), [](int N, int k, O) {
    FlagPath p = word(N, "F", k);
    return single("(cap_fe id_f)(id_f cup_ef)", diagram(p, {"id_f cup_ef", "cap_fe id_f"}), BimMap::identity(p));
  });
  add("biadjointness", "zigzag_f_left", ks(1, 0), [](int N, int k, O) {
    FlagPath p = word(N, "F", k);
    return single("(id_f cap_ef)(cup_fe id_f)", diagram(p, {"cup_fe id_f", "id_f cap_ef"}), BimMap::identity(p));
  });

  add("dot_cyclicity", "e_via_f_right", ks(0, 1), [](int N, int k, O) {
    FlagPath p = word(N, "E", k);
    return single("dot_f rotated right", diagram(p, {"id_e cup_fe", "id_e dot_f id_e", "cap_ef id_e"}), gen_dot(p, 0));
  });
  add("dot_cyclicity", "e_via_f_left", ks(0, 1), [](int N, int k, O) {
    FlagPath p = word(N, "E", k);
    return single("dot_f rotated left", diagram(p, {"cup_ef id_e", "id_e dot_f id_e", "id_e cap_fe"}), gen_dot(p, 0));
  });
  add("dot_cyclicity", "f_via_e_right", ks(1, 0), [](int N, int k, O) {
    FlagPath p = word(N, "F", k);
    return single("dot_e rotated right", diagram(p, {"id_f cup_ef", "id_f dot_e id_f", "cap_fe id_f"}), gen_dot(p, 0));
  });
  add("dot_cyclicity", "f_via_e_left", ks(1, 0), [](int N, int k, O) {
    FlagPath p = word(N, "F", k);
    return single("dot_e rotated left", diagram(p, {"cup_fe id_f", "id_f dot_e id_f", "id_f cap_ef"}), gen_dot(p, 0));
  });
  add("dot_cyclicity", "cup_fe_slide", ks(0, 1), [](int N, int k, O) {
    FlagPath p = FlagPath::identity(N, k);
    return single("dot across cup_fe", diagram(p, {"cup_fe", "dot_f id_e"}), diagram(p, {"cup_fe", "id_f dot_e"}));
  });
  add("dot_cyclicity", "cup_ef_slide", ks(1, 0), [](int N, int k, O) {
    FlagPath p = FlagPath::identity(N, k);
    return single("dot across cup_ef", diagram(p, {"cup_ef", "dot_e id_f"}), diagram(p, {"cup_ef", "id_e dot_f"}));
  });
  add("dot_cyclicity", "cap_fe_slide", ks(0, 1), [](int N, int k, O) {
    FlagPath p = word(N, "F E", k);
    return single("dot across cap_fe", diagram(p, {"dot_f id_e", "cap_fe"}), diagram(p, {"id_f dot_e", "cap_fe"}));
  });
  add("dot_cyclicity", "cap_ef_slide", ks(1, 0), [](int N, int k, O) {
    FlagPath p = word(N, "E F", k);
    return single("dot across cap_ef", diagram(p, {"dot_e id_f", "cap_ef"}), diagram(p, {"id_e dot_f", "cap_ef"}));
  });

  add("crossing_duality", "ff_via_ee_right", ks(2, 0), [](int N, int k, O) {
    FlagPath p = word(N, "F F", k);
    return single("cross_ee rotated right",
                  diagram(p, {"id_f id_f cup_ef", "id_f id_f id_e cup_ef id_f", "id_f id_f cross_ee id_f id_f",
                              "id_f cap_fe id_e id_f id_f", "cap_fe id_f id_f"}),
                  gen_crossing(CrossingKind::Downward, p, 0));
  });
  add("crossing_duality", "ff_via_ee_left", ks(2, 0), [](int N, int k, O) {
    FlagPath p = word(N, "F F", k);
    return single("cross_ee rotated left",
                  diagram(p, {"cup_fe id_f id_f", "id_f cup_fe id_e id_f id_f", "id_f id_f cross_ee id_f id_f",
                              "id_f id_f id_e cap_ef id_f", "id_f id_f cap_ef"}),
                  gen_crossing(CrossingKind::Downward, p, 0));
  });
  add("crossing_duality", "ee_via_ff_right", ks(0, 2), [](int N, int k, O) {
    FlagPath p = word(N, "E E", k);
    return single("cross_ff rotated right",
                  diagram(p, {"id_e id_e cup_fe", "id_e id_e id_f cup_fe id_e", "id_e id_e cross_ff id_e id_e",
                              "id_e cap_ef id_f id_e id_e", "cap_ef id_e id_e"}),
                  gen_crossing(CrossingKind::Upward, p, 0));
  });
  add("crossing_duality", "ee_via_ff_left", ks(0, 2), [](int N, int k, O) {
    FlagPath p = word(N, "E E", k);
    return single("cross_ff rotated left",
                  diagram(p, {"cup_ef id_e id_e", "id_e cup_ef id_f id_e id_e", "id_e id_e cross_ff id_e id_e",
                              "id_e id_e id_f cap_fe id_e", "id_e id_e cap_fe"}),
                  gen_crossing(CrossingKind::Upward, p, 0));
  });

  add("bubbles", "cw_negative_degree", ks(1, 0), [](int N, int k, O) { return bubble_negative(N, k, Orientation::Clockwise); });
  add("bubbles", "ccw_negative_degree", ks(0, 1),
      [](int N, int k, O) { return bubble_negative(N, k, Orientation::CounterClockwise); });
  add("bubbles", "degree_zero", ks(0, 0), [](int N, int k, O) { return bubble_unit(N, k); });
  add("bubbles", "closed_formula", ks(0, 0), [](int N, int k, O) { return bubble_closed_formula(N, k); });
  add("bubbles", "fake_bubble_series", ks(0, 0), [](int N, int k, O) { return fake_bubble_series(N, k); });

  add("nilhecke", "e_crossing_squared", ks(0, 2), [](int N, int k, O) {
    FlagPath p = word(N, "E E", k);
    BimMap U = gen_crossing(CrossingKind::Upward, p, 0);
    return single("U U = 0", compose_vertical(U, U), BimMap::zero(p, p, -4));
  });
  add("nilhecke", "f_crossing_squared", ks(2, 0), [](int N, int k, O) {
    FlagPath p = word(N, "F F", k);
    BimMap U = gen_crossing(CrossingKind::Downward, p, 0);
    return single("U U = 0", compose_vertical(U, U), BimMap::zero(p, p, -4));
  });
  add("nilhecke", "e_dot_exchange", ks(0, 2), [](int N, int k, O) { return exchange(word(N, "E E", k), CrossingKind::Upward); });
  add("nilhecke", "f_dot_exchange", ks(2, 0), [](int N, int k, O) { return exchange(word(N, "F F", k), CrossingKind::Downward); });
  auto needs3 = [](int N) -> std::optional<std::string> {
    if (N < 3) return std::string("requires N >= 3");
    return std::nullopt;
  };
  add("nilhecke", "e_braid", ks(0, 3), [](int N, int k, O) { return braid(word(N, "E E E", k), CrossingKind::Upward); }, needs3);
  add("nilhecke", "f_braid", ks(3, 0), [](int N, int k, O) { return braid(word(N, "F F F", k), CrossingKind::Downward); }, needs3);

  add("reduction_to_bubbles", "right_curl", [](int N) { return range(1, N - 1); },
      [](int N, int k, O) { return right_curl(N, k); });
  add("reduction_to_bubbles", "left_curl", ks(0, 2), [](int N, int k, O) { return left_curl(N, k); });

  add("identity_decomposition", "fe", ks(0, 1), [](int N, int k, O) { return identity_fe(N, k); });
  add("identity_decomposition", "ef", ks(1, 0), [](int N, int k, O) { return identity_ef(N, k); });

  add("propositions", "x_slide", ks(0, 1), [](int N, int k, O) { return ring_relation(N, k, SlideKind::X); });
  add("propositions", "y_slide", ks(0, 1), [](int N, int k, O) { return ring_relation(N, k, SlideKind::Y); });
  add("propositions", "xi_via_x_Y", ks(0, 1), [](int N, int k, O) { return ring_relation(N, k, SlideKind::dY); });
  add("propositions", "xi_via_X_y", ks(0, 1), [](int N, int k, O) { return ring_relation(N, k, SlideKind::dX); });
  add("propositions", "two_sided_x", ks(0, 1), [](int N, int k, O) { return two_sided(N, k, true); });
  add("propositions", "two_sided_y", ks(1, 0), [](int N, int k, O) { return two_sided(N, k, false); });
  add("propositions", "dot_slide_x", ks(0, 1), [](int N, int k, O) { return dot_slide_prop(N, k, true); });
  add("propositions", "dot_slide_y", ks(1, 0), [](int N, int k, O) { return dot_slide_prop(N, k, false); });
  add("propositions", "series_x_Y", ks(0, 0), [](int N, int k, O) { return series(N, k, SeriesIdentity::XY); });
  add("propositions", "series_y_X", ks(0, 0), [](int N, int k, O) { return series(N, k, SeriesIdentity::Xy); });

  add("degree_audit", "generators", ks(0, 0), [](int N, int k, O) { return degree_audit_generators(N, k); });
  add("degree_audit", "diagrams", ks(0, 0), [](int, int, O) { return CheckBody{}; });  // filled in by make_registry below

  add("bimodule_law", "generators", ks(0, 0), [](int N, int k, O o) { return bimodule_law(N, k, o); });
  add("bimodule_law", "unbounded_exponents", ks(0, 0), [](int N, int k, O) { return unbounded_exponents(N, k); });

  add("non_nilpotency", "dots", ks(0, 0), [](int N, int k, O) { return non_nilpotent(N, k); });

  add("k0_shadow", "rank_difference", ks(0, 0), [](int N, int k, O) { return k0_shadow(N, k); });

  // Every map equation of suites (a)-(g) at this context, audited for degree only.
  std::vector<CheckSpec> diagram_specs;
  for (const auto& s : r)
    if (s.suite == "biadjointness" || s.suite == "dot_cyclicity" || s.suite == "crossing_duality" || s.suite == "bubbles" ||
        s.suite == "nilhecke" || s.suite == "reduction_to_bubbles" || s.suite == "identity_decomposition")
      diagram_specs.push_back(s);
  for (auto& s : r) {
    if (s.name != "degree_audit.diagrams") continue;
    s.build = [diagram_specs](int N, int k, O o) {
      CheckBody b;
      int audited = 0;
      for (const auto& spec : diagram_specs) {
        auto c = spec.contexts(N);
        if (std::find(c.begin(), c.end(), k) == c.end()) continue;
        CheckBody inner = spec.build(N, k, o);
        for (const auto& eq : inner.maps) {
          audit_map(spec.name + " lhs", eq.lhs, eq.lhs.declared_degree(), b);
          audit_map(spec.name + " rhs", eq.rhs, eq.lhs.declared_degree(), b);
          ++audited;
        }
      }
      b.note = fmt::format("{} diagrams audited", 2 * audited);
      return b;
    };
  }
  std::sort(r.begin(), r.end(), [](const CheckSpec& a, const CheckSpec& b) { return a.name < b.name; });
  return r;
}

// ----------------------------------------------------------------- runner

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

CheckResult run_check(const CheckSpec& spec, int N, int k, const SuiteOptions& options) {
  CheckResult res;
  res.check = spec.name;
  res.N = N;
  res.k = k;
  auto start = std::chrono::steady_clock::now();
  try {
    CheckBody body = spec.build(N, k, options);
    std::vector<std::string> failures = body.failures;
    std::optional<std::string> counterexample = body.counterexample;
    std::uint64_t seed = task_seed(options, spec.name, N, k);
    for (const auto& eq : body.maps) {
      MapComparison cmp = map_equals(eq.lhs, eq.rhs, options.decorated_samples, seed++);
      if (!cmp.equal) {
        failures.push_back(eq.label + ": " + cmp.report);
        if (!counterexample && cmp.counterexample) counterexample = eq.label + ": " + *cmp.counterexample;
      }
    }
    for (const auto& eq : body.elements) {
      if (!(eq.lhs == eq.rhs)) {
        failures.push_back(eq.label + ": sides differ");
        if (!counterexample) counterexample = fmt::format("{}: lhs = {}; rhs = {}", eq.label, eq.lhs.to_string(), eq.rhs.to_string());
      }
    }
    const std::size_t equations = body.maps.size() + body.elements.size();
    if (failures.empty()) {
      res.status = Status::Pass;
      std::string count = equations ? fmt::format("{} equation{}", equations, equations == 1 ? "" : "s") : "";
      res.reason = body.note.empty() ? (count.empty() ? "ok" : count) : (count.empty() ? body.note : count + "; " + body.note);
    } else {
      res.status = Status::Fail;
      res.reason = failures.front();
      if (failures.size() > 1) res.reason += fmt::format(" (and {} more)", failures.size() - 1);
      res.counterexample = counterexample;
    }
  } catch (const std::exception& e) {
    res.status = Status::Fail;
    res.reason = std::string("exception: ") + e.what();
  }
  res.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return res;
}

bool VerifyReport::ok() const { return count(Status::Fail) == 0; }

int VerifyReport::count(Status s) const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [s](const CheckResult& r) { return r.status == s; }));
}

nlohmann::json VerifyReport::to_json(bool with_timing) const {
  nlohmann::json j;
  j["N"] = N;
  j["suites"] = suites;
  j["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"skipped", count(Status::Skipped)}};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json o;
    o["check"] = e.check;
    o["N"] = e.N;
    o["k"] = e.k ? nlohmann::json(*e.k) : nlohmann::json(nullptr);
    o["status"] = status_name(e.status);
    o["reason"] = e.reason;
    if (e.counterexample) o["counterexample"] = *e.counterexample;
    o["millis"] = with_timing ? e.millis : 0;
    arr.push_back(std::move(o));
  }
  j["entries"] = std::move(arr);
  return j;
}

std::string VerifyReport::to_text() const {
  std::size_t width = 5;
  for (const auto& e : entries) width = std::max(width, e.check.size());
  std::string s = fmt::format("{:<{}}  {:>2}  {:>2}  {:<7}  {:>7}  {}\n", "check", width, "N", "k", "status", "ms", "reason");
  for (const auto& e : entries) {
    s += fmt::format("{:<{}}  {:>2}  {:>2}  {:<7}  {:>7}  {}\n", e.check, width, e.N, e.k ? std::to_string(*e.k) : "-",
                     status_name(e.status), e.millis, e.reason);
    if (e.counterexample) s += fmt::format("{:<{}}    counterexample: {}\n", "", width, *e.counterexample);
  }
  s += fmt::format("N = {}: {} pass, {} fail, {} skipped\n", N, count(Status::Pass), count(Status::Fail), count(Status::Skipped));
  return s;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"biadjointness", "dot_cyclicity", "crossing_duality", "bubbles",
                                              "nilhecke",      "reduction_to_bubbles", "identity_decomposition", "propositions",
                                              "degree_audit",  "bimodule_law",  "non_nilpotency", "k0_shadow"};
  return names;
}

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry = make_registry();
  return registry;
}

const std::vector<CoverageItem>& coverage_manifest() {
  static const std::vector<CoverageItem> items{
      {"zigzag on E, cup on the right", "biadjointness.zigzag_e_right"},
      {"zigzag on E, cup on the left", "biadjointness.zigzag_e_left"},
      {"zigzag on F, cup on the right", "biadjointness.zigzag_f_right"},
      {"zigzag on F, cup on the left", "biadjointness.zigzag_f_left"},
      {"dot on F is the rotated dot on E (right)", "dot_cyclicity.f_via_e_right"},
      {"dot on F is the rotated dot on E (left)", "dot_cyclicity.f_via_e_left"},
      {"dot on E is the rotated dot on F (right)", "dot_cyclicity.e_via_f_right"},
      {"dot on E is the rotated dot on F (left)", "dot_cyclicity.e_via_f_left"},
      {"dot slides through cup_fe", "dot_cyclicity.cup_fe_slide"},
      {"dot slides through cup_ef", "dot_cyclicity.cup_ef_slide"},
      {"dot slides through cap_fe", "dot_cyclicity.cap_fe_slide"},
      {"dot slides through cap_ef", "dot_cyclicity.cap_ef_slide"},
      {"downward crossing is the rotated upward crossing (right)", "crossing_duality.ff_via_ee_right"},
      {"downward crossing is the rotated upward crossing (left)", "crossing_duality.ff_via_ee_left"},
      {"upward crossing is the rotated downward crossing (right)", "crossing_duality.ee_via_ff_right"},
      {"upward crossing is the rotated downward crossing (left)", "crossing_duality.ee_via_ff_left"},
      {"clockwise bubbles of negative degree vanish", "bubbles.cw_negative_degree"},
      {"counterclockwise bubbles of negative degree vanish", "bubbles.ccw_negative_degree"},
      {"degree zero bubbles equal 1", "bubbles.degree_zero"},
      {"bubble images match the closed formula", "bubbles.closed_formula"},
      {"fake bubble series: cw times ccw is 1", "bubbles.fake_bubble_series"},
      {"nilHecke: upward crossing squares to zero", "nilhecke.e_crossing_squared"},
      {"nilHecke: downward crossing squares to zero", "nilhecke.f_crossing_squared"},
      {"nilHecke: dot and upward crossing exchange", "nilhecke.e_dot_exchange"},
      {"nilHecke: dot and downward crossing exchange", "nilhecke.f_dot_exchange"},
      {"nilHecke: braid relation on E E E", "nilhecke.e_braid"},
      {"nilHecke: braid relation on F F F", "nilhecke.f_braid"},
      {"curl on the right reduces to clockwise bubbles", "reduction_to_bubbles.right_curl"},
      {"curl on the left reduces to counterclockwise bubbles", "reduction_to_bubbles.left_curl"},
      {"identity decomposition through F E", "identity_decomposition.fe"},
      {"identity decomposition through E F", "identity_decomposition.ef"},
      {"X slides across the one-step ring", "propositions.x_slide"},
      {"Y slides across the one-step ring", "propositions.y_slide"},
      {"xi powers through x and Y", "propositions.xi_via_x_Y"},
      {"xi powers through X and y", "propositions.xi_via_X_y"},
      {"two-sided x sums", "propositions.two_sided_x"},
      {"two-sided y sums", "propositions.two_sided_y"},
      {"dot slide, x sum", "propositions.dot_slide_x"},
      {"dot slide, y sum", "propositions.dot_slide_y"},
      {"x times Y series is 1", "propositions.series_x_Y"},
      {"y times X series is 1", "propositions.series_y_X"},
      {"generator degrees match the table", "degree_audit.generators"},
      {"suite diagrams are homogeneous of their table degree", "degree_audit.diagrams"},
      {"generators are bimodule maps", "bimodule_law.generators"},
      {"generator formulas agree on unreduced exponents", "bimodule_law.unbounded_exponents"},
      {"dots are not nilpotent", "non_nilpotency.dots"},
      {"EF - FE = [n] on graded ranks", "k0_shadow.rank_difference"},
  };
  return items;
}

Laurent k0_difference(int N, int n, ShiftConvention convention) {
  FlagPath ef = compile_word(SignedWord::parse("E F", n), N, convention);
  FlagPath fe = compile_word(SignedWord::parse("F E", n), N, convention);
  Laurent a = ef.is_zero() ? Laurent() : graded_rank(ef);
  Laurent b = fe.is_zero() ? Laurent() : graded_rank(fe);
  return a - b;
}

VerifyReport run_suite(int N, const std::set<std::string>& suites, const SuiteOptions& options) {
  if (N < 1 || N > options.max_N)
    throw std::invalid_argument(fmt::format("N must be between 1 and {}, got {}", options.max_N, N));
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw std::invalid_argument(fmt::format("unknown suite '{}'", s));

  VerifyReport report;
  report.N = N;
  for (const auto& s : suite_names())
    if (suites.empty() || suites.count(s)) report.suites.push_back(s);

  struct Task {
    const CheckSpec* spec;
    int k;
  };
  std::vector<Task> tasks;
  for (const auto& spec : check_registry()) {
    if (!suites.empty() && !suites.count(spec.suite)) continue;
    auto contexts = spec.contexts(N);
    if (contexts.empty()) {
      CheckResult skipped;
      skipped.check = spec.name;
      skipped.N = N;
      skipped.status = Status::Skipped;
      auto why = spec.skip_reason ? spec.skip_reason(N) : std::nullopt;
      skipped.reason = why.value_or(fmt::format("no valid context for N = {}", N));
      report.entries.push_back(skipped);
      continue;
    }
    for (int k : contexts) tasks.push_back({&spec, k});
  }

  std::vector<CheckResult> results(tasks.size());
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = run_check(*tasks[i].spec, N, tasks[i].k, options);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  report.entries.insert(report.entries.end(), results.begin(), results.end());
  std::sort(report.entries.begin(), report.entries.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.check != b.check) return a.check < b.check;
    return a.k.value_or(-1) < b.k.value_or(-1);
  });
  return report;
}

}  // namespace catsl2
