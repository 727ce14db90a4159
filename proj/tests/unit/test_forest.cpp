#include <gtest/gtest.h>

#include <random>
#include <variant>

#include "forest_gen.hpp"
#include "kreimer/kreimer.hpp"

namespace kreimer {
namespace {

LinearForm e(std::size_t i) { return LinearForm::basis(i); }

DecoratedForest single(const LinearForm& w) { return DecoratedForest(leaf(w)); }

TEST(Concat, UnitIsNeutral) {
  const auto q = InnerProduct::identity(2);
  const auto f = single(e(0));
  EXPECT_EQ(canonical(concat(DecoratedForest::unit(), f, q)), canonical(f));
  EXPECT_EQ(canonical(concat(f, DecoratedForest::unit(), q)), canonical(f));
}

TEST(Concat, OrthogonalSingletons) {
  const auto q = InnerProduct::identity(2);
  const auto f = concat(single(e(0)), single(e(1)), q);
  EXPECT_EQ(f.trees().size(), 2u);
  EXPECT_EQ(degree(f), 2u);
}

TEST(Concat, RejectsNonOrthogonal) {
  const auto q = InnerProduct::identity(2);
  EXPECT_THROW(concat(single(e(0)), single(e(0) + e(1)), q), LocalityViolation);
}

TEST(Concat, RelabelsClashingIds) {
  const auto q = InnerProduct::identity(2);
  const DecoratedTree t = leaf(e(0));
  DecoratedTree same_id{e(1), {}, t.root_id};
  const auto f = concat(DecoratedForest(t), DecoratedForest(same_id), q);
  EXPECT_NE(f.trees()[0].root_id, f.trees()[1].root_id);
}

TEST(Graft, EmptyForestGivesSingleVertex) {
  const auto q = InnerProduct::identity(1);
  const auto t = graft(e(0), DecoratedForest::unit(), q);
  EXPECT_EQ(t.root_decoration, e(0));
  EXPECT_TRUE(t.children.empty());
}

TEST(Graft, Ladder) {
  const auto q = InnerProduct::identity(2);
  const auto t = graft(e(0), single(e(1)), q);
  EXPECT_EQ(degree(t), 2u);
  ASSERT_EQ(t.children.size(), 1u);
  EXPECT_EQ(t.children[0].root_decoration, e(1));
}

TEST(Graft, RejectsSelfPairing) {
  const auto q = InnerProduct::identity(1);
  EXPECT_THROW(graft(e(0), single(e(0)), q), LocalityViolation);
}

TEST(Decompose, ThreeForms) {
  const auto q = InnerProduct::identity(3);
  EXPECT_TRUE(std::holds_alternative<EmptyForest>(decompose(DecoratedForest::unit())));

  const auto ladder = DecoratedForest(graft(e(0), single(e(1)), q));
  const auto g = std::get<GraftedTree>(decompose(ladder));
  EXPECT_EQ(g.decoration, e(0));
  EXPECT_EQ(canonical(g.children), canonical(single(e(1))));

  const auto two = concat(single(e(0)), single(e(2)), q);
  const auto p = std::get<ProductOfTrees>(decompose(two));
  EXPECT_EQ(p.trees.size(), 2u);
}

TEST(Degree, Examples) {
  const auto q = InnerProduct::identity(2);
  EXPECT_EQ(degree(DecoratedForest::unit()), 0u);
  EXPECT_EQ(degree(single(e(0))), 1u);
  EXPECT_EQ(degree(DecoratedForest(graft(e(0), single(e(1)), q))), 2u);
}

TEST(SubtreeSums, Examples) {
  const auto q = InnerProduct::identity(3);
  const auto dot = single(e(0));
  EXPECT_EQ(subtree_sums(dot).at(dot.trees()[0].root_id), e(0));

  const auto ladder = DecoratedForest(graft(e(0), single(e(1)), q));
  const auto& root = ladder.trees()[0];
  const auto s = subtree_sums(ladder);
  EXPECT_EQ(s.at(root.root_id), e(0) + e(1));
  EXPECT_EQ(s.at(root.children[0].root_id), e(1));

  const auto corolla = DecoratedForest(graft(e(0), concat(single(e(1)), single(e(2)), q), q));
  const auto& r = corolla.trees()[0];
  const auto c = subtree_sums(corolla);
  EXPECT_EQ(c.at(r.root_id), e(0) + e(1) + e(2));
  EXPECT_EQ(c.at(r.children[0].root_id), e(1));
  EXPECT_EQ(c.at(r.children[1].root_id), e(2));
}

TEST(Canonical, BuildOrderDoesNotMatter) {
  const auto q = InnerProduct::identity(2);
  // Child first: build the leaf, then graft.
  const auto child_first = DecoratedForest(graft(e(0), single(e(1)), q));
  // Root first: start from the root and attach the child afterwards.
  DecoratedTree root = leaf(e(0));
  root.children.push_back(leaf(e(1)));
  EXPECT_EQ(canonical(child_first), canonical(DecoratedForest(root)));
}

TEST(Canonical, SiblingSwapAndDistinctDecorations) {
  const auto q = InnerProduct::identity(3);
  const auto a = DecoratedForest(graft(e(0), DecoratedForest({leaf(e(1)), leaf(e(2))}), q));
  const auto b = DecoratedForest(graft(e(0), DecoratedForest({leaf(e(2)), leaf(e(1))}), q));
  EXPECT_EQ(canonical(a), canonical(b));
  const auto c = DecoratedForest(graft(e(1), DecoratedForest({leaf(e(0)), leaf(e(2))}), q));
  EXPECT_NE(canonical(a), canonical(c));
}

TEST(Parse, Examples) {
  const auto unit = parse_forest("1");
  EXPECT_TRUE(unit.forest.empty());

  const auto ladder = parse_forest("(1 (2))");
  ASSERT_EQ(ladder.forest.trees().size(), 1u);
  const auto& root = ladder.forest.trees()[0];
  ASSERT_EQ(root.children.size(), 1u);
  EXPECT_EQ(inner(ladder.q, root.root_decoration, root.root_decoration), 1);
  EXPECT_EQ(inner(ladder.q, root.children[0].root_decoration, root.children[0].root_decoration), 2);

  const auto corolla = parse_forest("(1 (2) (3))");
  EXPECT_EQ(corolla.forest.trees()[0].children.size(), 2u);
  EXPECT_EQ(degree(corolla.forest), 3u);
}

TEST(Parse, RationalWeightsAndComments) {
  const auto p = parse_forest("# a ladder\n(3/4 (2)) (5)\n");
  EXPECT_EQ(degree(p.forest), 3u);
  EXPECT_EQ(p.q.matrix()(0, 0), Rational(3, 4));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_forest(""), ParseError);
  EXPECT_THROW(parse_forest("(1"), ParseError);
  EXPECT_THROW(parse_forest("(1))"), ParseError);
  EXPECT_THROW(parse_forest("(a)"), ParseError);
  EXPECT_THROW(parse_forest("1 (1)"), ParseError);
  EXPECT_THROW(parse_forest("(0)"), NonPositiveWeight);
  EXPECT_THROW(parse_forest("(1 (-2))"), NonPositiveWeight);
  EXPECT_THROW(parse_forest("([1,0])", DecorationMode::canonical), ParseError);
}

TEST(Parse, ExplicitMode) {
  const auto p = parse_forest("Q=1,0,0;0,1,0;0,0,1\n([1,0,0] ([0,1,0]) ([0,0,1]))", DecorationMode::explicit_vectors);
  EXPECT_EQ(degree(p.forest), 3u);
  EXPECT_TRUE(check_properly_decorated(p.forest, p.q));
  EXPECT_THROW(parse_forest("Q=1,0;0,1\n([1,0] ([1,0]))", DecorationMode::explicit_vectors), NotProperlyDecorated);
  EXPECT_THROW(parse_forest("(1 (1))", DecorationMode::explicit_vectors), ParseError);
}

class ForestProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
};

TEST_F(ForestProperties, ConcatCommutesAndDegreeAdds) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_forest(testing::random_shape(rng, 0, 4), rng);
    const auto b = testing::random_forest(testing::random_shape(rng, 0, 4), rng);
    const std::size_t offset = a.q.dimension();
    const auto q = InnerProduct::direct_sum(a.q, b.q);
    const auto b2 = shift_basis(b.forest, offset);
    const auto ab = concat(a.forest, b2, q);
    const auto ba = concat(b2, a.forest, q);
    EXPECT_EQ(canonical(ab), canonical(ba));
    EXPECT_EQ(degree(ab), degree(a.forest) + degree(b.forest));
  }
}

TEST_F(ForestProperties, ConcatIsAssociative) {
  for (int trial = 0; trial < 50; ++trial) {
    auto x = testing::random_forest(testing::random_shape(rng, 1, 3), rng);
    auto y = testing::random_forest(testing::random_shape(rng, 1, 3), rng);
    auto z = testing::random_forest(testing::random_shape(rng, 1, 3), rng);
    const auto q = InnerProduct::direct_sum(InnerProduct::direct_sum(x.q, y.q), z.q);
    const auto yf = shift_basis(y.forest, x.q.dimension());
    const auto zf = shift_basis(z.forest, x.q.dimension() + y.q.dimension());
    EXPECT_EQ(canonical(concat(concat(x.forest, yf, q), zf, q)), canonical(concat(x.forest, concat(yf, zf, q), q)));
  }
}

TEST_F(ForestProperties, GraftAddsOneVertex) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_forest(testing::random_shape(rng, 0, 5), rng);
    const std::size_t n = p.q.dimension();
    const auto q = InnerProduct::direct_sum(p.q, InnerProduct::identity(1));
    EXPECT_EQ(degree(graft(e(n), p.forest, q)), degree(p.forest) + 1);
  }
}

// Rebuilds a forest from decompose alone.
DecoratedForest rebuild(const DecoratedForest& f, const InnerProduct& q) {
  return std::visit(
      [&](const auto& part) -> DecoratedForest {
        using Part = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<Part, EmptyForest>) {
          return DecoratedForest::unit();
        } else if constexpr (std::is_same_v<Part, GraftedTree>) {
          return DecoratedForest(graft(part.decoration, rebuild(part.children, q), q));
        } else {
          DecoratedForest acc;
          for (const auto& t : part.trees) acc = concat(acc, rebuild(DecoratedForest(t), q), q);
          return acc;
        }
      },
      decompose(f));
}

TEST(ForestCatalog, DecomposeIsLeftInverse) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n <= 6; ++n)
    for (const auto& shape : testing::forest_shapes(n)) {
      const auto p = testing::random_forest(shape, rng);
      EXPECT_EQ(canonical(rebuild(p.forest, p.q)), canonical(p.forest)) << shape;
    }
}

TEST(ForestCatalog, SerializeRoundTrip) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n <= 6; ++n)
    for (const auto& shape : testing::forest_shapes(n)) {
      const auto p = testing::random_forest(shape, rng);
      const auto back = parse_forest(serialize(p.forest, p.q));
      EXPECT_EQ(canonical(back.forest), canonical(p.forest)) << shape;
      EXPECT_EQ(back.q, p.q) << shape;
    }
}

TEST(ForestCatalog, ExplicitRoundTrip) {
  std::mt19937_64 rng(12);
  for (const auto& shape : testing::forest_shapes(4)) {
    const auto p = testing::random_forest(shape, rng);
    const auto [f, q] = testing::rebased(p, rng);
    const auto back = parse_forest(serialize(f, q), DecorationMode::explicit_vectors);
    EXPECT_EQ(canonical(back.forest), canonical(f)) << shape;
    EXPECT_EQ(back.q, q);
  }
}

TEST(ForestCatalog, ShapeCounts) {
  // Rooted forests on n unlabeled vertices: 1, 1, 2, 4, 9, 20, 48, 115, 286.
  const std::size_t expected[] = {1, 1, 2, 4, 9, 20, 48, 115, 286};
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(testing::forest_shapes(n).size(), expected[n]) << n;
}

}  // namespace
}  // namespace kreimer
