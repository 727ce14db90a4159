#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/forest.hpp"
#include "kreimer/gram.hpp"
#include "kreimer/pairing.hpp"
#include "kreimer/pipoly.hpp"
#include "kreimer/projector.hpp"
#include "kreimer/series.hpp"

namespace kreimer {

/// Symbol x^{-exponent} * prod_{L in factors} pi / sin(pi L).
struct RegularizedIntegral {
  LinearForm exponent;
  std::vector<LinearForm> factors;

  /// Factors compared as a multiset.
  friend bool operator==(const RegularizedIntegral& a, const RegularizedIntegral& b) {
    if (a.exponent != b.exponent || a.factors.size() != b.factors.size()) return false;
    auto fa = a.factors, fb = b.factors;
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    return fa == fb;
  }

  std::string to_string() const {
    std::string out = "x^-(" + exponent.to_string() + ")";
    for (const auto& f : factors) out += " * pi/sin(pi*(" + f.to_string() + "))";
    return out;
  }
};

/// Closed form of the branched integral: exponent sum_v d(v), one factor L_v per
/// vertex (preorder). Throws NotProperlyDecorated.
inline RegularizedIntegral regularize(const DecoratedForest& f, const InnerProduct& q) {
  require_properly_decorated(f, q);
  RegularizedIntegral out;
  const auto sums = subtree_sums(f);
  for (const auto& v : vertices(f)) {
    out.exponent += v.decoration;
    out.factors.push_back(sums.at(v.id));
  }
  return out;
}

/// ev_1 of the regularized integral: the factor list only.
inline std::vector<LinearForm> r1(const DecoratedForest& f, const InnerProduct& q) { return regularize(f, q).factors; }

/// prod_v (1/z_v + h(z_v)) as the single fraction prod_v (1 + z_v h(z_v)) / prod_v z_v,
/// with z_v standing for L_v, together with the Gram data of the L_v.
inline std::pair<GermFraction, ProjectionContext> expand_r1(const DecoratedForest& f, const InnerProduct& q,
                                                            unsigned truncation) {
  require_properly_decorated(f, q);
  const std::size_t n = degree(f);
  if (truncation < n)
    throw InsufficientTruncation("truncation " + std::to_string(truncation) + " is below the forest degree " +
                                 std::to_string(n));
  std::vector<VertexId> vars;
  for (const auto& v : vertices(f)) vars.push_back(v.id);

  TruncSeries numerator = TruncSeries::constant(vars, truncation, PiPoly(1));
  for (VertexId v : vars) {
    // 1 + z h(z); h is only needed to degree truncation - 1.
    TruncSeries factor = mul_by_var(h_series(v, truncation == 0 ? 0 : truncation - 1), v).embedded(vars);
    factor = factor.truncated(truncation) + TruncSeries::constant(vars, truncation, PiPoly(1));
    numerator = numerator * factor;
  }
  return {GermFraction(std::move(numerator), vars), ProjectionContext(gram(f, q))};
}

struct RenormalizedValue {
  PiPoly exact;
  HighPrecision numeric;
};

struct RenormOptions {
  /// Numerator truncation; defaults to degree(F) + 2.
  std::optional<unsigned> truncation;
  /// Recompute at truncation + 2 and require an identical value.
  bool stability_check = true;
  TelescopeOrder order = TelescopeOrder::grouped();
};

/// R^ren = ev_0 o pi_+ o R_1. Throws NotProperlyDecorated, TruncationInstability.
inline RenormalizedValue renormalize(const DecoratedForest& f, const InnerProduct& q, const RenormOptions& opts = {}) {
  const unsigned n = opts.truncation.value_or(static_cast<unsigned>(degree(f)) + 2);
  auto [frac, ctx] = expand_r1(f, q, n);
  PiPoly value = ev0_piplus(frac, ctx, opts.order);
  if (opts.stability_check) {
    auto [frac2, ctx2] = expand_r1(f, q, n + 2);
    PiPoly again = ev0_piplus(frac2, ctx2, opts.order);
    if (again != value)
      throw TruncationInstability("renormalized value changed from " + value.to_string() + " to " +
                                  again.to_string() + " when raising the truncation to " + std::to_string(n + 2));
  }
  return {value, value.evaluate()};
}

namespace detail {

inline std::string weighted_shape(const DecoratedTree& t, const InnerProduct& q, const Rational& total) {
  std::vector<std::string> kids;
  for (const auto& c : t.children) kids.push_back(weighted_shape(c, q, total));
  std::sort(kids.begin(), kids.end());
  Rational w = inner(q, t.root_decoration, t.root_decoration) / total;
  std::string out = "(" + w.get_str();
  for (const auto& k : kids) out += k;
  return out + ")";
}

inline std::string normalized_shape(const DecoratedForest& f, const InnerProduct& q) {
  Rational total = 0;
  for (const auto& [id, d] : decorations(f)) total += inner(q, d, d);
  std::vector<std::string> parts;
  for (const auto& t : f.trees()) parts.push_back(weighted_shape(t, q, total));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

}  // namespace detail

/// Same underlying forest with vertex weights Q(d(v), d(v)) proportional by
/// one positive constant. Improperly decorated inputs are never similar.
inline bool is_similar(const DecoratedForest& f1, const InnerProduct& q1, const DecoratedForest& f2,
                       const InnerProduct& q2) {
  if (!check_properly_decorated(f1, q1) || !check_properly_decorated(f2, q2)) return false;
  if (degree(f1) != degree(f2)) return false;
  if (f1.empty()) return true;
  // Normalizing by the total weight removes the constant.
  return detail::normalized_shape(f1, q1) == detail::normalized_shape(f2, q2);
}

}  // namespace kreimer
