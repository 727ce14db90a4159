#include <gtest/gtest.h>

#include <random>

#include "forest_gen.hpp"
#include "kreimer/kreimer.hpp"

namespace kreimer {
namespace {

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

struct Ladder {
  ParsedForest p;
  VertexId s, t;  // root, leaf
  std::vector<VertexId> vars;
  ProjectionContext ctx;

  explicit Ladder(const std::string& text = "(1 (1))")
      : p(parse_forest(text)),
        s(p.forest.trees()[0].root_id),
        t(p.forest.trees()[0].children[0].root_id),
        vars{s, t},
        ctx(gram(p.forest, p.q)) {}
};

TEST(ProjectCoeffs, LadderExamples) {
  Ladder l;
  EXPECT_EQ(project_coeffs(l.ctx, {l.t}, l.s).at(l.t), 1);
  EXPECT_EQ(project_coeffs(l.ctx, {l.s}, l.t).at(l.s), frac(1, 2));
  const auto own = project_coeffs(l.ctx, {l.s, l.t}, l.s);
  EXPECT_EQ(own.at(l.s), 1);
  EXPECT_EQ(own.at(l.t), 0);
}

TEST(ProjectCoeffs, SolvesNormalEquations) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = testing::random_forest(testing::random_shape(rng, 3, 6), rng);
    const auto g = gram(p.forest, p.q);
    const ProjectionContext ctx(g);
    const auto& vs = g.vertices();
    const std::vector<VertexId> poles{vs[1], vs.back()};
    const auto a = project_coeffs(ctx, poles, vs[0]);
    for (VertexId u : poles) {
      Rational lhs = 0;
      for (VertexId v : poles) lhs += g.entry(v, u) * a.at(v);
      EXPECT_EQ(lhs, g.entry(vs[0], u));
    }
  }
}

TEST(ProjectCoeffs, Errors) {
  Ladder l;
  EXPECT_THROW(project_coeffs(l.ctx, {}, l.s), SingularGram);
  RationalMatrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1;
  EXPECT_THROW(ProjectionContext(GramMatrix(l.vars, m)), SingularGram);
}

TEST(Ev0Piplus, LadderExamples) {
  Ladder l;
  const unsigned n = 4;
  const auto one = TruncSeries::constant(l.vars, n, PiPoly(1));
  EXPECT_TRUE(ev0_piplus(GermFraction(one, {l.s, l.t}), l.ctx).is_zero());

  const auto hs = h_series(l.s, n).embedded(l.vars);
  EXPECT_EQ(ev0_piplus(GermFraction(hs, {l.t}), l.ctx), PiPoly::monomial(frac(1, 6), 1));

  const auto ht = h_series(l.t, n).embedded(l.vars);
  EXPECT_EQ(ev0_piplus(GermFraction(ht, {l.s}), l.ctx), PiPoly::monomial(frac(1, 12), 1));
}

TEST(Ev0Piplus, WeightedLadderHandRecursion) {
  // q = (1, 2): gram [[3, 2], [2, 2]], so a = 1 for V = {t} and a = 2/3 for V = {s}.
  Ladder l("(1 (2))");
  const unsigned n = 4;
  const auto hs = h_series(l.s, n).embedded(l.vars);
  const auto ht = h_series(l.t, n).embedded(l.vars);
  EXPECT_EQ(ev0_piplus(GermFraction(hs, {l.t}), l.ctx), PiPoly::monomial(frac(1, 6), 1));
  EXPECT_EQ(ev0_piplus(GermFraction(ht, {l.s}), l.ctx), PiPoly::monomial(frac(1, 9), 1));
}

TEST(PiplusExpand, Examples) {
  Ladder l;
  const unsigned n = 5;
  const auto hs = h_series(l.s, n).embedded(l.vars);
  EXPECT_EQ(piplus_expand(GermFraction(hs, {}), l.ctx), hs);

  // h(z_s - z_t) depends only on L'_s = L_s - L_t, which is orthogonal to L_t.
  const auto polar = subst_linear(hs, {{l.s, {{l.s, 1}, {l.t, -1}}}});
  EXPECT_TRUE(piplus_expand(GermFraction(polar * polar, {l.t}), l.ctx).is_zero());

  const auto g = piplus_expand(GermFraction(hs, {l.t}), l.ctx);
  EXPECT_EQ(g.truncation(), n - 1);
  EXPECT_EQ(eval0(g), PiPoly::monomial(frac(1, 6), 1));
}

TEST(PiplusExpand, InsufficientTruncation) {
  Ladder l;
  const auto one = TruncSeries::constant(l.vars, 1, PiPoly(1));
  EXPECT_THROW(piplus_expand(GermFraction(one, {l.s, l.t}), l.ctx), InsufficientTruncation);
}

TEST(GermFraction, Validation) {
  Ladder l;
  const auto one = TruncSeries::constant(l.vars, 2, PiPoly(1));
  EXPECT_THROW(GermFraction(one, {l.s, l.s}), VariableMismatch);
  EXPECT_THROW(GermFraction(one, {VertexId::fresh()}), VariableMismatch);
}

// Random fraction over the vertices of a random forest.
struct Instance {
  std::vector<VertexId> vars;
  ProjectionContext ctx;
  GermFraction frac;
};

TruncSeries random_numerator(const std::vector<VertexId>& vars, unsigned n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, static_cast<int>(n)), slot(0, static_cast<int>(vars.size()) - 1),
      num(-4, 4), den(1, 3), pi(0, 1);
  TruncSeries s(vars, n);
  for (int k = 0; k < 10; ++k) {
    Exponent e(vars.size());
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) {
      const auto i = static_cast<std::size_t>(slot(rng));
      e.set(i, e[i] + 1);
    }
    s.add_term(e, PiPoly::monomial(frac(num(rng), den(rng)), static_cast<std::size_t>(pi(rng))));
  }
  return s;
}

Instance random_instance(std::mt19937_64& rng, std::size_t lo = 2, std::size_t hi = 6) {
  const auto p = testing::random_forest(testing::random_shape(rng, lo, hi), rng);
  const auto g = gram(p.forest, p.q);
  std::vector<VertexId> vars = g.vertices();
  std::vector<VertexId> poles;
  std::bernoulli_distribution pick(0.6);
  for (VertexId v : vars)
    if (pick(rng)) poles.push_back(v);
  if (poles.empty()) poles.push_back(vars.front());
  const unsigned n = static_cast<unsigned>(poles.size()) + 3;
  return {vars, ProjectionContext(g), GermFraction(random_numerator(vars, n, rng), poles)};
}

TEST(ProjectorProperties, OrdersGiveTheSameProjection) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto in = random_instance(rng);
    const auto grouped = piplus_expand(in.frac, in.ctx, TelescopeOrder::grouped());
    EXPECT_EQ(piplus_expand(in.frac, in.ctx, TelescopeOrder::lexicographic()), grouped);
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      EXPECT_EQ(piplus_expand(in.frac, in.ctx, TelescopeOrder::shuffled(seed)), grouped);
    EXPECT_EQ(eval0(grouped), ev0_piplus(in.frac, in.ctx));
  }
}

TEST(ProjectorProperties, Linearity) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    const auto in = random_instance(rng);
    const auto other = random_numerator(in.vars, in.frac.numerator().truncation(), rng);
    const GermFraction sum(in.frac.numerator() + other, in.frac.poles());
    const GermFraction second(other, in.frac.poles());
    EXPECT_EQ(ev0_piplus(sum, in.ctx), ev0_piplus(in.frac, in.ctx) + ev0_piplus(second, in.ctx));
    const Rational c = frac(-7, 3);
    EXPECT_EQ(ev0_piplus(GermFraction(in.frac.numerator() * c, in.frac.poles()), in.ctx),
              ev0_piplus(in.frac, in.ctx) * c);
  }
}

TEST(ProjectorProperties, GramScalingInvariance) {
  std::mt19937_64 rng(33);
  const Rational scales[] = {2, frac(1, 3), frac(7, 5), 13};
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = random_instance(rng);
    const auto base = piplus_expand(in.frac, in.ctx);
    for (const auto& c : scales) EXPECT_EQ(piplus_expand(in.frac, in.ctx.scaled(c)), base);
  }
}

TEST(ProjectorProperties, PolarGermsVanish) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 25; ++trial) {
    const auto in = random_instance(rng);
    const auto& poles = in.frac.poles();
    // g(L'): every non-pole slot replaced by its part orthogonal to the poles.
    Substitution sub;
    for (VertexId w : in.vars) {
      if (std::find(poles.begin(), poles.end(), w) != poles.end()) {
        sub[w] = {};
        continue;
      }
      VariableCombination combo{{w, 1}};
      for (const auto& [v, a] : project_coeffs(in.ctx, poles, w))
        if (a != 0) combo[v] = -a;
      sub[w] = combo;
    }
    const auto polar = subst_linear(in.frac.numerator(), sub);
    EXPECT_TRUE(piplus_expand(GermFraction(polar, poles), in.ctx).is_zero());
  }
}

TEST(ProjectorProperties, HolomorphicGermsAreFixed) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 25; ++trial) {
    const auto in = random_instance(rng);
    const auto& num = in.frac.numerator();
    const auto k = static_cast<unsigned>(in.frac.poles().size());
    // z_V g / z_V = g: exact up to the lost truncation.
    const auto lifted = GermFraction(num.truncated(num.truncation() - k), {}).with_poles(in.frac.poles());
    EXPECT_EQ(piplus_expand(lifted, in.ctx), num.truncated(num.truncation() - k));
  }
}

TEST(ProjectorProperties, TruncationStability) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = random_instance(rng);
    const auto& num = in.frac.numerator();
    // Raising the truncation with zero extra terms must not move the value.
    TruncSeries padded(in.vars, num.truncation() + 2);
    for (const auto& [e, c] : num.terms()) padded.add_term(e, c);
    EXPECT_EQ(ev0_piplus(GermFraction(padded, in.frac.poles()), in.ctx), ev0_piplus(in.frac, in.ctx));
  }
}

TEST(ProjectorProperties, SplitFractionIdentity) {
  // 1/z + h(z) and (1 + z h(z)) / z are the same germ.
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_forest(testing::random_shape(rng, 1, 4), rng);
    const auto g = gram(p.forest, p.q);
    const auto& vars = g.vertices();
    const ProjectionContext ctx(g);
    const unsigned n = static_cast<unsigned>(vars.size()) + 2;
    const VertexId z = vars[trial % vars.size()];
    const auto other = random_numerator(vars, n, rng);
    const auto one = TruncSeries::constant(vars, n, PiPoly(1));
    const auto h = h_series(z, n).embedded(vars);
    const auto zh = mul_by_var(h_series(z, n - 1), z).embedded(vars);
    const PiPoly split = ev0_piplus(GermFraction(other, {z}), ctx) + ev0_piplus(GermFraction(other * h, {}), ctx);
    EXPECT_EQ(ev0_piplus(GermFraction(other * (one + zh), {z}), ctx), split);
  }
}

}  // namespace
}  // namespace kreimer
