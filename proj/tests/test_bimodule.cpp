#include <gtest/gtest.h>

#include "catsl2/bimodule.hpp"
#include "catsl2/twomorphism.hpp"
#include "support.hpp"

using namespace catsl2;
using namespace testing_support;

namespace {

std::vector<FlagPath> all_paths(int N, int max_length) {
  std::vector<FlagPath> out;
  std::function<void(std::vector<int>)> grow = [&](std::vector<int> rings) {
    out.push_back(FlagPath::make(N, rings));
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

BimElement unit(const FlagPath& p) { return BimElement::basis_element(p, ExponentVector(p.length(), 0)); }

}  // namespace

TEST(FlagPath, ShapeAndValidation) {
  FlagPath p = FlagPath::make(2, {1, 2, 1}, -1);
  EXPECT_EQ(p.length(), 2);
  EXPECT_TRUE(p.ascending(0));
  EXPECT_FALSE(p.ascending(1));
  EXPECT_EQ(p.to_string(), "(1,2,1){-1}");
  EXPECT_THROW(FlagPath::make(2, {0, 2}), std::invalid_argument);
  EXPECT_THROW(FlagPath::make(2, {}), std::invalid_argument);
  EXPECT_TRUE(FlagPath::make(1, {0, 1, 2}).is_zero());
}

TEST(Normalize, CrossJunctionExample) {
  FlagPath p = FlagPath::make(1, {0, 1, 0});
  RawTensor raw{p, {Xi(1), C(1)}, C(1)};
  EXPECT_EQ(normalize(raw), BimElement::basis_element(p, {0, 0}, Y(1, -1)));
}

TEST(Normalize, UnitIsAlreadyNormal) {
  for (const auto& p : all_paths(3, 3)) {
    if (p.is_zero()) continue;
    RawTensor raw{p, std::vector<Polynomial>(p.length(), C(1)), C(1)};
    ASSERT_EQ(normalize(raw), unit(p));
  }
}

TEST(Normalize, XiSquaredOnUpStep) {
  // on (1,2) with N = 2, xi is the second Chern root: xi^2 = x1 xi - x2 in the right ring
  FlagPath p = FlagPath::make(2, {1, 2});
  RawTensor raw{p, {Xi(1).pow(2)}, C(1)};
  BimElement expected = BimElement::basis_element(p, {1}, X(1, 2)) - BimElement::basis_element(p, {0}, X(2, 2));
  EXPECT_EQ(normalize(raw), expected);
}

TEST(Act, UnitAndRightCoefficients) {
  for (const auto& p : all_paths(2, 3)) {
    if (p.is_zero()) continue;
    BimElement e = unit(p);
    EXPECT_EQ(act(Side::Left, C(1), e), e);
    for (const auto& v : p.right_context().generators())
      EXPECT_EQ(act(Side::Right, Polynomial(v), e), BimElement::basis_element(p, ExponentVector(p.length(), 0), Polynomial(v)));
  }
}

TEST(Act, LeftAndRightActionsCanDiffer) {
  // On (0,1,0) with N = 1 the only generator comes from H_0, which both sides share.
  FlagPath p010 = FlagPath::make(1, {0, 1, 0});
  EXPECT_EQ(act(Side::Left, Y(1, -1), unit(p010)), act(Side::Right, Y(1, -1), unit(p010)));
  // On (1,0,1) with N = 2, x_{1,0} from the left is the root xi of the first factor.
  FlagPath p101 = FlagPath::make(2, {1, 0, 1});
  BimElement left = act(Side::Left, X(1, 0), unit(p101));
  BimElement right = act(Side::Right, X(1, 0), unit(p101));
  EXPECT_NE(left, right);
  EXPECT_EQ(left, BimElement::basis_element(p101, {1, 0}));
}

TEST(Act, RejectsForeignGenerators) {
  FlagPath p = FlagPath::make(2, {1, 2});
  EXPECT_THROW(act(Side::Left, X(2, 2), unit(p)), std::invalid_argument);
}

TEST(Act, LeftActionIsAnAction) {
  std::mt19937_64 rng(99);
  for (int N = 1; N <= 3; ++N)
    for (const auto& p : all_paths(N, 3)) {
      if (p.is_zero()) continue;
      auto b = basis(p);
      for (int t = 0; t < 4; ++t) {
        Polynomial r = random_ring_element(p.left_context(), rng), s = random_ring_element(p.left_context(), rng);
        BimElement e = BimElement::basis_element(p, b[rng() % b.size()]);
        ASSERT_EQ(act(Side::Left, r * s, e), act(Side::Left, r, act(Side::Left, s, e))) << p.to_string();
        ASSERT_EQ(act(Side::Left, r + s, e), act(Side::Left, r, e) + act(Side::Left, s, e));
        Polynomial u = random_ring_element(p.right_context(), rng);
        ASSERT_EQ(act(Side::Right, u, act(Side::Left, r, e)), act(Side::Left, r, act(Side::Right, u, e)));
      }
    }
}

TEST(Junction, GeneratorsPassThrough) {
  for (int N = 1; N <= 3; ++N)
    for (const auto& p : all_paths(N, 3)) {
      if (p.is_zero() || p.length() < 2) continue;
      for (int i = 0; i + 1 < p.length(); ++i) {
        GrassContext junction = GrassContext::make(N, p.rings()[i + 1]);
        for (const auto& v : junction.generators()) {
          std::vector<Polynomial> a(p.length(), C(1)), b(p.length(), C(1));
          a[i] = Polynomial(v);
          b[i + 1] = Polynomial(v);
          ASSERT_EQ(normalize({p, a, C(1)}), normalize({p, b, C(1)})) << p.to_string() << " " << v.to_string();
        }
      }
    }
}

TEST(Tensor, IdentityPathsAreUnits) {
  std::mt19937_64 rng(4);
  FlagPath p = FlagPath::make(2, {1, 2, 1});
  BimElement e = BimElement::basis_element(p, {1, 0}, random_ring_element(p.right_context(), rng));
  EXPECT_EQ(tensor(unit(FlagPath::identity(2, 1)), e), e);
  EXPECT_EQ(tensor(e, unit(FlagPath::identity(2, 1))), e);
}

TEST(Tensor, AcrossJunction) {
  BimElement a = normalize({FlagPath::make(1, {0, 1}), {Xi(1)}, C(1)});
  BimElement b = unit(FlagPath::make(1, {1, 0}));
  EXPECT_EQ(tensor(a, b), BimElement::basis_element(FlagPath::make(1, {0, 1, 0}), {0, 0}, Y(1, -1)));
}

TEST(Basis, Examples) {
  EXPECT_EQ(basis(FlagPath::make(3, {1, 2})), (std::vector<ExponentVector>{{0}, {1}}));
  EXPECT_EQ(basis(FlagPath::identity(2, 1)), (std::vector<ExponentVector>{{}}));
  EXPECT_EQ(basis(FlagPath::make(1, {0, 1, 0})), (std::vector<ExponentVector>{{0, 0}}));
}

TEST(GradedRank, Examples) {
  EXPECT_EQ(graded_rank(FlagPath::make(3, {1, 2})), Laurent::monomial(0) + Laurent::monomial(2));
  EXPECT_EQ(graded_rank(FlagPath::identity(2, 1, 5)), Laurent::monomial(5));
  EXPECT_EQ(graded_rank(FlagPath::make(1, {0, 1, 0})), Laurent::monomial(0));
}

TEST(GradedRank, MatchesProductOfStepRanks) {
  // independent count: an up-step from ring k has k + 1 basis powers of xi, a down-step to ring k has N - k
  for (int N = 1; N <= 4; ++N)
    for (const auto& p : all_paths(N, 4)) {
      if (p.is_zero()) continue;
      Laurent expected = Laurent::monomial(0);
      for (int i = 0; i < p.length(); ++i) {
        int lower = std::min(p.rings()[i], p.rings()[i + 1]);
        int count = p.ascending(i) ? lower + 1 : N - lower;
        Laurent step;
        for (int a = 0; a < count; ++a) step.add(2 * a, 1);
        Laurent next;
        for (const auto& [e1, c1] : expected.coefficients())
          for (const auto& [e2, c2] : step.coefficients()) next.add(e1 + e2, c1 * c2);
        expected = next;
      }
      ASSERT_EQ(graded_rank(p), expected) << p.to_string();
      ASSERT_EQ(basis(p).size(), [&] {
        long s = 0;
        for (const auto& [e, c] : expected.coefficients()) s += c;
        return static_cast<std::size_t>(s);
      }());
    }
}

TEST(BimElement, DegreeIncludesShift) {
  FlagPath p = FlagPath::make(2, {1, 2}, 3);
  BimElement e = BimElement::basis_element(p, {1}, X(1, 2));
  EXPECT_EQ(e.degree(), (DegreeInfo{DegreeInfo::Kind::Homogeneous, 2 + 2 + 3}));
}
