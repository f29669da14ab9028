#include <gtest/gtest.h>

#include "catsl2/rewriting.hpp"
#include "catsl2/twomorphism.hpp"
#include "support.hpp"

using namespace catsl2;
using namespace testing_support;

namespace {

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

Polynomial random_factor(const FactorRing& fr, std::mt19937_64& rng) {
  std::vector<VarSymbol> gens = fr.left_generators();
  for (const auto& v : fr.right_generators()) gens.push_back(v);
  gens.push_back(fr.xi());
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, static_cast<int>(gens.size()) - 1), nterms(1, 2), nvars(0, 2);
  Polynomial p;
  for (int t = nterms(rng); t > 0; --t) {
    Polynomial m = C(coef(rng));
    for (int v = nvars(rng); v > 0; --v) m *= Polynomial(gens[pick(rng)]);
    p += m;
  }
  // xi excess above the bound exercises the monic relation
  if (rng() % 3 == 0) p *= Polynomial(fr.xi()).pow(fr.bound() + 1 + static_cast<int>(rng() % 2));
  return p;
}

RawTensor random_raw(const FlagPath& p, std::mt19937_64& rng) {
  RawTensor raw{p, {}, C(1)};
  for (int i = 0; i < p.length(); ++i) raw.factors.push_back(random_factor(factor_ring(p, i), rng));
  if (rng() % 2 == 0) raw.tail = random_ring_element(p.right_context(), rng, 2, 2);
  return raw;
}

}  // namespace

TEST(Rewriting, NormalFormOfExamples) {
  FlagPath p = FlagPath::make(1, {0, 1, 0});
  RawTensor raw{p, {Xi(1), C(1)}, C(1)};
  for (Strategy s : {Strategy::LeftToRight, Strategy::RightToLeft, Strategy::Random}) {
    RewriteResult r = rewrite_normalize(raw, s, 7);
    EXPECT_EQ(r.element, BimElement::basis_element(p, {0, 0}, Y(1, -1)));
    EXPECT_TRUE(r.stats.measure_decreased);
    EXPECT_GT(r.stats.steps, 0);
  }
}

TEST(Rewriting, AlreadyNormalTakesNoSteps) {
  FlagPath p = FlagPath::make(2, {1, 2, 1});
  RawTensor raw{p, {Xi(1), C(1)}, X(1, 0)};
  RewriteResult r = rewrite_normalize(raw, Strategy::LeftToRight);
  EXPECT_EQ(r.stats.steps, 0);
  EXPECT_EQ(r.element, normalize(raw));
}

// 500 random tensors per (N, path), N <= 3, paths of length 1..4: every step lowers the measure,
// and both junction orders (plus a random one) land on the same normal form as normalize().
TEST(Rewriting, TerminationAndConfluence) {
  std::mt19937_64 rng(123456);
  long configurations = 0;
  for (int N = 1; N <= 3; ++N)
    for (const auto& p : paths_up_to(N, 4)) {
      if (p.is_zero()) continue;
      ++configurations;
      for (int t = 0; t < 500; ++t) {
        RawTensor raw = random_raw(p, rng);
        RewriteResult a = rewrite_normalize(raw, Strategy::LeftToRight);
        RewriteResult b = rewrite_normalize(raw, Strategy::RightToLeft);
        ASSERT_TRUE(a.stats.measure_decreased) << p.to_string() << ": " << a.stats.violation;
        ASSERT_TRUE(b.stats.measure_decreased) << p.to_string() << ": " << b.stats.violation;
        ASSERT_EQ(a.element, b.element) << p.to_string();
        if (t % 10 == 0) {
          RewriteResult c = rewrite_normalize(raw, Strategy::Random, rng());
          ASSERT_TRUE(c.stats.measure_decreased);
          ASSERT_EQ(c.element, a.element);
          ASSERT_EQ(normalize(raw), a.element) << p.to_string();
        }
      }
    }
  EXPECT_GT(configurations, 50);
}
