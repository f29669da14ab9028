// One line per acceptance criterion; exit status 1 if any fails.
#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "catsl2/diagram.hpp"
#include "catsl2/relations.hpp"
#include "catsl2/rewriting.hpp"

using namespace catsl2;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::vector<FlagPath> paths_up_to(int N, int max_length) {
  std::vector<FlagPath> out;
  std::function<void(std::vector<int>)> grow = [&](std::vector<int> rings) {
    if (rings.size() > 1) out.push_back(FlagPath::make(N, rings));
    if (static_cast<int>(rings.size()) - 1 == max_length) return;
    for (int d : {-1, 1}) {
      int next = rings.back() + d;
      if (next < 0 || next > N) continue;
      auto r = rings;
      r.push_back(next);
      grow(r);
    }
  };
  for (int k = 0; k <= N; ++k) grow({k});
  return out;
}

std::string failures_of(const VerifyReport& r) {
  for (const auto& e : r.entries)
    if (e.status == Status::Fail) return fmt::format("{} N={} k={}: {}", e.check, e.N, e.k ? std::to_string(*e.k) : "-", e.reason);
  return "";
}

Outcome relation_suite() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  int passed = 0, braids = 0;
  for (int N = 1; N <= 4; ++N) {
    VerifyReport r = run_suite(N, {"biadjointness", "dot_cyclicity", "crossing_duality", "bubbles", "nilhecke",
                                   "reduction_to_bubbles", "identity_decomposition"});
    if (!r.ok()) o.fail(failures_of(r));
    passed += r.count(Status::Pass);
    for (const auto& e : r.entries) {
      if (e.check.find("braid") != std::string::npos && e.status == Status::Pass) ++braids;
      if (e.status == Status::Skipped && N >= 3) o.fail("unexpected skip at N = " + std::to_string(N) + ": " + e.check);
    }
  }
  if (braids == 0) o.fail("braid relation never ran");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > 300) o.fail(fmt::format("took {:.1f} s", secs));
  if (o.ok) o.detail = fmt::format("{} entries pass, {} braid contexts, {:.1f} s", passed, braids, secs);
  return o;
}

Outcome identity_batteries() {
  Outcome o;
  int passed = 0;
  for (int N = 1; N <= 4; ++N) {
    VerifyReport r = run_suite(N, {"propositions"});
    if (!r.ok()) o.fail(failures_of(r));
    passed += r.count(Status::Pass);
    for (int k = 0; k <= N; ++k) {
      GrassContext c = GrassContext::make(N, k);
      for (SeriesIdentity s : {SeriesIdentity::XY, SeriesIdentity::Xy}) {
        SeriesCheck sc = check_series_identity(c, s, 2 * N);
        if (!sc.ok) o.fail(fmt::format("series identity N={} k={}: {}", N, k, sc.report));
      }
    }
  }
  if (o.ok) o.detail = fmt::format("{} proposition entries pass; x/Y and y/X series exact through degree 2N", passed);
  return o;
}

Outcome degree_audit() {
  Outcome o;
  int generators = 0;
  for (int N = 1; N <= 4; ++N) {
    VerifyReport r = run_suite(N, {"degree_audit"});
    if (!r.ok()) o.fail(failures_of(r));
    for (int k = 0; k <= N; ++k) {
      const int n = 2 * k - N;
      auto expect = [&](const BimMap& f, int d, const char* what) {
        ++generators;
        DegreeInfo m = measured_degree(f);
        if (!(m == DegreeInfo{DegreeInfo::Kind::Homogeneous, d})) o.fail(fmt::format("{} N={} k={}: expected {}", what, N, k, d));
      };
      if (k + 1 <= N) {
        expect(gen_dot(path_of_rings(N, {k + 1, k}), 0), 2, "dot on E");
        expect(local_cup(CupKind::FE, N, k), n + 1, "cup FE");
        expect(local_cap(CupKind::FE, N, k), n + 1, "cap FE");
      }
      if (k >= 1) {
        expect(gen_dot(path_of_rings(N, {k - 1, k}), 0), 2, "dot on F");
        expect(local_cup(CupKind::EF, N, k), 1 - n, "cup EF");
        expect(local_cap(CupKind::EF, N, k), 1 - n, "cap EF");
      }
      if (k + 2 <= N) expect(local_crossing(CrossingKind::Upward, N, k), -2, "upward crossing");
      if (k >= 2) expect(local_crossing(CrossingKind::Downward, N, k), -2, "downward crossing");
    }
  }
  if (o.ok) o.detail = fmt::format("{} generator maps match the table; suite diagrams audited", generators);
  return o;
}

Outcome fake_bubbles() {
  Outcome o;
  int contexts = 0;
  for (int N = 1; N <= 4; ++N)
    for (int k = 0; k <= N; ++k) {
      ++contexts;
      GrassContext c = GrassContext::make(N, k);
      const int D = 2 * N;
      std::vector<Polynomial> cw, ccw;
      for (int a = 0; a <= D; ++a) {
        cw.push_back(bubble_value(c, Orientation::Clockwise, a));
        ccw.push_back(bubble_value(c, Orientation::CounterClockwise, a));
      }
      std::vector<Polynomial> inverse = series_invert(cw, D);
      for (int a = 0; a <= D; ++a)
        if (!(inverse[a] == ccw[a])) o.fail(fmt::format("N={} k={} degree {}: inverse of cw series differs from ccw", N, k, a));
      if (!check_series_identity(c, SeriesIdentity::BubbleProduct, D).ok) o.fail(fmt::format("N={} k={}: product not 1", N, k));
    }
  if (o.ok) o.detail = fmt::format("{} contexts, cw * ccw = 1 through degree 2N", contexts);
  return o;
}

Outcome non_nilpotency() {
  Outcome o;
  int maps = 0;
  for (int N = 1; N <= 4; ++N)
    for (int k = 0; k <= N; ++k)
      for (int left : {k + 1, k - 1}) {
        if (left < 0 || left > N) continue;
        FlagPath p = path_of_rings(N, {left, k});
        BimMap d = gen_dot(p, 0);
        BimElement e = BimElement::basis_element(p, {0});
        ++maps;
        for (int M = 1; M <= 4 * N; ++M) {
          e = d(e);
          if (e.is_zero()) o.fail(fmt::format("dot^{} vanishes on {}", M, p.to_string()));
        }
      }
  if (o.ok) o.detail = fmt::format("{} dot maps nonzero through M = 4N", maps);
  return o;
}

// Graded rank from scratch: up-step from ring l has l + 1 powers of xi, down-step to ring l has N - l.
Laurent rank_by_product(int N, const std::vector<int>& rings, ShiftConvention conv) {
  std::map<int, long> poly{{0, 1}};
  int shift = 0;
  for (std::size_t i = 0; i + 1 < rings.size(); ++i) {
    for (int r : {rings[i], rings[i + 1]})
      if (r < 0 || r > N) return Laurent();
    int lower = std::min(rings[i], rings[i + 1]);
    bool up = rings[i + 1] > rings[i];
    int count = up ? lower + 1 : N - lower;
    std::map<int, long> next;
    for (const auto& [e, c] : poly)
      for (int a = 0; a < count; ++a) next[e + 2 * a] += c;
    poly = next;
    int source = rings[i + 1];
    if (!up) shift += 1 - N + source;
    else shift += conv == ShiftConvention::SourceWeight ? 1 - source : 1 - lower;
  }
  Laurent out;
  for (const auto& [e, c] : poly) out.add(e + shift, c);
  return out;
}

Outcome k0_shadow() {
  Outcome o;
  int weights = 0, lower_fail = 0;
  for (int N = 1; N <= 4; ++N) {
    VerifyReport r = run_suite(N, {"k0_shadow"});
    if (!r.ok()) o.fail(failures_of(r));
    for (const auto& e : r.entries)
      if (e.reason.find("flagged") == std::string::npos && e.N > 0 && e.k && 2 * *e.k != N)
        o.fail("report does not flag the lower-ring convention: " + e.reason);
    for (int n = -N; n <= N; n += 2) {
      ++weights;
      int k = (n + N) / 2;
      Laurent target = quantum_integer(n);
      Laurent oracle = rank_by_product(N, {k, k - 1, k}, ShiftConvention::SourceWeight) -
                       rank_by_product(N, {k, k + 1, k}, ShiftConvention::SourceWeight);
      if (!(oracle == target)) o.fail(fmt::format("oracle N={} n={}: {}", N, n, oracle.to_string()));
      if (!(k0_difference(N, n, ShiftConvention::SourceWeight) == target)) o.fail(fmt::format("engine N={} n={}", N, n));
      Laurent lower = k0_difference(N, n, ShiftConvention::LowerRing);
      Laurent lower_oracle = rank_by_product(N, {k, k - 1, k}, ShiftConvention::LowerRing) -
                             rank_by_product(N, {k, k + 1, k}, ShiftConvention::LowerRing);
      if (!(lower == lower_oracle)) o.fail(fmt::format("lower-ring engine and oracle disagree N={} n={}", N, n));
      if (!(lower == target)) ++lower_fail;
    }
  }
  if (o.ok)
    o.detail = fmt::format("{} weights equal [n] under source-weight shifts; lower-ring shifts fail at {} weights and are flagged",
                           weights, lower_fail);
  return o;
}

Outcome rewriting() {
  Outcome o;
  std::mt19937_64 rng(2024);
  long tensors = 0;
  int configs = 0;
  for (int N = 1; N <= 3; ++N)
    for (const auto& p : paths_up_to(N, 4)) {
      if (p.is_zero()) continue;
      ++configs;
      for (int t = 0; t < 500; ++t) {
        RawTensor raw{p, {}, Polynomial::one()};
        for (int i = 0; i < p.length(); ++i) {
          const FactorRing& fr = factor_ring(p, i);
          std::vector<VarSymbol> gens = fr.left_generators();
          for (const auto& v : fr.right_generators()) gens.push_back(v);
          gens.push_back(fr.xi());
          Polynomial f = Polynomial(static_cast<long>(rng() % 5) - 2);
          for (int v = static_cast<int>(rng() % 4); v > 0; --v) f *= Polynomial(gens[rng() % gens.size()]);
          f += Polynomial(fr.xi()).pow(static_cast<int>(rng() % (fr.bound() + 3)));
          raw.factors.push_back(f);
        }
        ++tensors;
        RewriteResult a = rewrite_normalize(raw, Strategy::LeftToRight);
        RewriteResult b = rewrite_normalize(raw, Strategy::RightToLeft);
        if (!a.stats.measure_decreased || !b.stats.measure_decreased) o.fail(p.to_string() + ": " + a.stats.violation + b.stats.violation);
        if (!(a.element == b.element)) o.fail(p.to_string() + ": strategies disagree");
      }
    }
  if (o.ok) o.detail = fmt::format("{} paths, {} tensors, every step lowers the measure, both orders agree", configs, tensors);
  return o;
}

Outcome well_definedness() {
  Outcome o;
  int maps = 0;
  for (int N = 1; N <= 4; ++N)
    for (int k = 0; k <= N; ++k) {
      std::vector<BimMap> gens;
      if (k + 1 <= N) gens.insert(gens.end(), {local_cup(CupKind::FE, N, k), local_cap(CupKind::FE, N, k)});
      if (k >= 1) gens.insert(gens.end(), {local_cup(CupKind::EF, N, k), local_cap(CupKind::EF, N, k)});
      if (k + 2 <= N) gens.push_back(local_crossing(CrossingKind::Upward, N, k));
      if (k >= 2) gens.push_back(local_crossing(CrossingKind::Downward, N, k));
      for (const auto& f : gens) {
        ++maps;
        if (auto bad = check_bimodule_law(f, 50, 77 + 31 * maps)) o.fail(*bad);
      }
    }
  if (o.ok) o.detail = fmt::format("{} cup/cap/crossing maps, 50 decorated samples each", maps);
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome dsl() {
  Outcome o;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    DiagramAST ast;
    ast.N = 1 + static_cast<int>(rng() % 4);
    ast.weight = -ast.N + 2 * static_cast<int>(rng() % (ast.N + 1));
    ast.domain.weight = ast.weight;
    for (int j = static_cast<int>(rng() % 4); j > 0; --j) ast.domain.letters.push_back(rng() % 2 ? Letter::E : Letter::F);
    std::vector<Letter> word = ast.domain.letters;
    for (int l = 1 + static_cast<int>(rng() % 4); l > 0; --l) {
      DiagramLayer layer;
      std::size_t pos = 0;
      while (pos < word.size()) {
        bool e = word[pos] == Letter::E;
        if (pos + 1 < word.size() && word[pos + 1] == word[pos] && rng() % 3 == 0) {
          layer.tokens.push_back({e ? TokenKind::CrossEE : TokenKind::CrossFF, {}});
          pos += 2;
        } else if (pos + 1 < word.size() && word[pos + 1] != word[pos] && rng() % 3 == 0) {
          layer.tokens.push_back({e ? TokenKind::CapEF : TokenKind::CapFE, {}});
          pos += 2;
        } else {
          layer.tokens.push_back({rng() % 2 ? (e ? TokenKind::DotE : TokenKind::DotF) : (e ? TokenKind::IdE : TokenKind::IdF), {}});
          ++pos;
        }
      }
      if (layer.tokens.empty() || rng() % 4 == 0) layer.tokens.push_back({rng() % 2 ? TokenKind::CupFE : TokenKind::CupEF, {}});
      word = apply_layer(word, layer);
      ast.layers.push_back(layer);
    }
    std::string text = render_diagram(ast);
    DiagramAST back = parse_diagram(text);
    if (!back.same_shape(ast) || render_diagram(back) != text) o.fail("round trip changed:\n" + text);
  }
  const std::string dir = CATSL2_DOCS_DIR "/diagrams/";
  BimMap zig = compile_diagram(parse_diagram(read_file(dir + "zigzag.cat")));
  if (!map_equals(zig, BimMap::identity(zig.domain()), 2).equal) o.fail("zigzag.cat is not the identity");
  DiagramAST bub = parse_diagram(read_file(dir + "bubble.cat"));
  BimMap b = compile_diagram(bub);
  int n = bub.weight, dots = static_cast<int>(bub.layers.size()) - 2;
  Polynomial expected = bubble_value(GrassContext::from_weight(bub.N, n), Orientation::Clockwise, dots - (n - 1));
  if (!(b.column({}) == BimElement::basis_element(b.codomain(), {}, expected))) o.fail("bubble.cat differs from bubble_value");
  BimMap sq = compile_diagram(parse_diagram(read_file(dir + "crossing_square.cat")));
  if (sq.domain().is_zero() || !map_equals(sq, BimMap::zero(sq.domain(), sq.codomain(), sq.declared_degree())).equal)
    o.fail("crossing_square.cat is not zero on a nonzero bimodule");
  if (o.ok) o.detail = "100 random diagrams round-trip; zigzag = identity, bubble = bubble_value, crossing square = 0";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"relation suite, N = 1..4", relation_suite},
      {"identity batteries", identity_batteries},
      {"degree audit", degree_audit},
      {"fake-bubble consistency", fake_bubbles},
      {"non-nilpotency of dots", non_nilpotency},
      {"K0 shadow", k0_shadow},
      {"rewriting termination and confluence", rewriting},
      {"bimodule law for cups, caps, crossings", well_definedness},
      {"diagram language", dsl},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all &= o.ok;
    std::cout << fmt::format("{} criterion {}: {} - {}", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail) << std::endl;
  }
  return all ? 0 : 1;
}
