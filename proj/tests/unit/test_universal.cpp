#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "forest_gen.hpp"
#include "kreimer/kreimer.hpp"

namespace kreimer {
namespace {

LinearForm e(std::size_t i) { return LinearForm::basis(i); }

// Records the fold as a term: a value is the sorted multiset of its tree
// factors, so products are commutative and associative with unit {}.
struct TraceTarget {
  using value_type = std::vector<std::string>;
  value_type unit() const { return {}; }
  bool independent(const value_type&, const value_type&) const { return true; }
  value_type product(const value_type& a, const value_type& b) const {
    value_type out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  bool independent(const LinearForm&, const value_type&) const { return true; }
  value_type act(const LinearForm& w, const value_type& u) const {
    std::string inner;
    for (const auto& x : u) inner += (inner.empty() ? "" : "*") + x;
    return {"B[" + w.to_string() + "](" + inner + ")"};
  }
};

// Refuses every action, to exercise the locality guard.
struct RefusingTarget : TraceTarget {
  using TraceTarget::independent;
  bool independent(const LinearForm&, const value_type&) const { return false; }
};

static_assert(OperatedLocalityTarget<TraceTarget>);
static_assert(OperatedLocalityTarget<SymbolicIntegralTarget>);
static_assert(OperatedLocalityTarget<BetaPhiTarget>);

TEST(Fold, Examples) {
  const auto q = InnerProduct::identity(2);
  const TraceTarget t;
  using V = TraceTarget::value_type;
  EXPECT_EQ(fold(DecoratedForest::unit(), t), V{});
  EXPECT_EQ(fold(DecoratedForest(leaf(e(0))), t), V{"B[e0]()"});
  const DecoratedForest ladder(graft(e(0), DecoratedForest(leaf(e(1))), q));
  EXPECT_EQ(fold(ladder, t), V{"B[e0](B[e1]())"});
}

TEST(Fold, ProductOrderDoesNotMatter) {
  const auto p = parse_forest("(1 (2)) (3) (4 (5) (6))");
  std::vector<DecoratedTree> trees = p.forest.trees();
  std::reverse(trees.begin(), trees.end());
  const auto sym = symbolic_integral_target(p.q);
  EXPECT_EQ(fold(DecoratedForest(trees), sym), fold(p.forest, sym));
  EXPECT_EQ(fold(DecoratedForest(trees), TraceTarget{}), fold(p.forest, TraceTarget{}));
}

TEST(Fold, LocalityViolationIsReported) {
  const auto p = parse_forest("(1 (2))");
  EXPECT_THROW(fold(p.forest, RefusingTarget{}), LocalityViolation);
  // A symbolic target whose pairing does not make the decorations orthogonal.
  RationalMatrix m(2, 2);
  m(0, 0) = m(1, 1) = 2;
  m(0, 1) = m(1, 0) = 1;
  EXPECT_THROW(fold(p.forest, SymbolicIntegralTarget(InnerProduct(m))), LocalityViolation);
  EXPECT_NO_THROW(fold(p.forest, WithoutLocality<SymbolicIntegralTarget>{SymbolicIntegralTarget(InnerProduct(m))}));
}

TEST(SymbolicTarget, ActionOnUnit) {
  const SymbolicIntegralTarget t(InnerProduct::identity(1));
  EXPECT_EQ(t.act(e(0), t.unit()), (RegularizedIntegral{e(0), {e(0)}}));
}

TEST(SymbolicTarget, LadderAndCorollaMatchRegularize) {
  for (const char* text : {"(1 (1))", "(1 (2) (3))", "(2 (1 (3)) (5))"}) {
    const auto p = parse_forest(text);
    EXPECT_EQ(fold(p.forest, symbolic_integral_target(p.q)), regularize(p.forest, p.q)) << text;
  }
}

TEST(SymbolicTarget, MatchesRegularizeOnShapes) {
  std::mt19937_64 rng(51);
  for (std::size_t n = 0; n <= 6; ++n)
    for (const auto& shape : testing::forest_shapes(n)) {
      const auto p = testing::random_forest(shape, rng);
      EXPECT_EQ(fold(p.forest, symbolic_integral_target(p.q)), regularize(p.forest, p.q)) << shape;
    }
}

TEST(SymbolicTarget, MatchesRegularizeOnExplicitDecorations) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = testing::random_forest(testing::random_shape(rng, 1, 6), rng);
    const auto [f, q] = testing::rebased(p, rng);
    EXPECT_EQ(fold(f, symbolic_integral_target(q)), regularize(f, q));
  }
}

TEST(Branched, Examples) {
  const auto q = InnerProduct::identity(2);
  const auto id = [](const LinearForm& w) { return w; };
  EXPECT_TRUE(branched(id, DecoratedForest::unit(), q).is_zero());
  const DecoratedForest ladder(graft(e(0), DecoratedForest(leaf(e(1))), q));
  EXPECT_EQ(branched(id, ladder, q), e(0) + e(1));

  const auto twice = [](const LinearForm& w) { return Rational(2) * w; };
  EXPECT_EQ(branched(twice, ladder, q), Rational(2) * e(0) + Rational(4) * e(1));

  const auto leaky = [](const LinearForm& w) { return w + LinearForm::basis(1, w.coefficient(0)); };
  EXPECT_THROW(branched(leaky, ladder, q), LocalityViolation);
}

TEST(Branched, IdentityGivesTheSumOfDecorations) {
  std::mt19937_64 rng(53);
  const auto id = [](const LinearForm& w) { return w; };
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = testing::random_forest(testing::random_shape(rng, 1, 7), rng);
    LinearForm total;
    for (const auto& [v, d] : decorations(p.forest)) total += d;
    EXPECT_EQ(branched(id, p.forest, p.q), total);
  }
}

TEST(MorphismConditions, HoldOnRandomIndependentPairs) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_forest(testing::random_shape(rng, 0, 4), rng);
    const auto b = testing::random_forest(testing::random_shape(rng, 0, 4), rng);
    const std::size_t k = a.q.dimension() + b.q.dimension();
    const auto q = InnerProduct::direct_sum(InnerProduct::direct_sum(a.q, b.q), InnerProduct::diagonal({3}));
    const auto f2 = shift_basis(b.forest, a.q.dimension());
    const auto w = e(k);
    EXPECT_TRUE(check_morphism(a.forest, f2, w, q, symbolic_integral_target(q)).all());
    EXPECT_TRUE(check_morphism(a.forest, f2, w, q, TraceTarget{}).all());
  }
}

}  // namespace
}  // namespace kreimer
