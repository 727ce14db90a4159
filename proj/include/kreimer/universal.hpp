#pragma once

// Folding decorated forests into operated locality monoids.
//
// A target supplies a unit, a partial commutative product, a partial action of
// decorations and the two independence predicates guarding them. The fold is
// the unique morphism out of properly decorated forests:
//
//   fold(1)              = unit
//   fold(T_1 ... T_n)    = fold(T_1) ... fold(T_n)
//   fold(B_+^w(F))       = act(w, fold(F))
//
// Independence is checked at every step, so arbitrary user targets are safe to
// plug in; the first failed check raises LocalityViolation.

#include <algorithm>
#include <concepts>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/forest.hpp"
#include "kreimer/gram.hpp"
#include "kreimer/pairing.hpp"
#include "kreimer/renorm.hpp"

namespace kreimer {

/// Operated commutative locality monoid over LinearForm decorations.
///
///   unit()              1_U, independent of everything
///   independent(u, v)   locality relation on U
///   product(u, v)       defined when independent(u, v)
///   independent(w, u)   locality between a decoration and a value
///   act(w, u)           beta^w(u), defined when independent(w, u)
///
/// Targets whose member functions are const and side-effect free may be shared
/// across threads; fold itself holds no state.
template <class T>
concept OperatedLocalityTarget = requires(const T& t, const typename T::value_type& u, const LinearForm& w) {
  typename T::value_type;
  { t.unit() } -> std::convertible_to<typename T::value_type>;
  { t.independent(u, u) } -> std::convertible_to<bool>;
  { t.product(u, u) } -> std::convertible_to<typename T::value_type>;
  { t.independent(w, u) } -> std::convertible_to<bool>;
  { t.act(w, u) } -> std::convertible_to<typename T::value_type>;
};

template <OperatedLocalityTarget Target>
typename Target::value_type fold(const DecoratedForest& f, const Target& target);

template <OperatedLocalityTarget Target>
typename Target::value_type fold(const DecoratedTree& t, const Target& target) {
  auto inner_value = fold(DecoratedForest(t.children), target);
  if (!target.independent(t.root_decoration, inner_value))
    throw LocalityViolation("cannot act with " + t.root_decoration.to_string() + " at vertex " +
                            t.root_id.to_string() + " on the image of its children " +
                            canonical(DecoratedForest(t.children)));
  return target.act(t.root_decoration, inner_value);
}

template <OperatedLocalityTarget Target>
typename Target::value_type fold(const DecoratedForest& f, const Target& target) {
  return std::visit(
      [&](const auto& part) -> typename Target::value_type {
        using Part = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<Part, EmptyForest>) {
          return target.unit();
        } else if constexpr (std::is_same_v<Part, GraftedTree>) {
          return fold(f.trees().front(), target);
        } else {
          auto acc = fold(part.trees.front(), target);
          for (std::size_t i = 1; i < part.trees.size(); ++i) {
            auto next = fold(part.trees[i], target);
            if (!target.independent(acc, next))
              throw LocalityViolation("images are not independent when multiplying in tree " +
                                      canonical(part.trees[i]) + " (vertex " + part.trees[i].root_id.to_string() +
                                      ")");
            acc = target.product(acc, next);
          }
          return acc;
        }
      },
      decompose(f));
}

/// Drops every locality constraint of a target: the plain operated-monoid case.
template <OperatedLocalityTarget Target>
struct WithoutLocality {
  using value_type = typename Target::value_type;
  Target base;

  value_type unit() const { return base.unit(); }
  bool independent(const value_type&, const value_type&) const { return true; }
  value_type product(const value_type& a, const value_type& b) const { return base.product(a, b); }
  bool independent(const LinearForm&, const value_type&) const { return true; }
  value_type act(const LinearForm& w, const value_type& u) const { return base.act(w, u); }
};

/// The additive monoid of linear forms with orthogonality as locality, acted on
/// by beta_phi^w(u) = phi(w + u).
class BetaPhiTarget {
 public:
  using value_type = LinearForm;
  using Map = std::function<LinearForm(const LinearForm&)>;

  BetaPhiTarget(Map phi, InnerProduct q) : phi_(std::move(phi)), q_(std::move(q)) {}

  LinearForm unit() const { return {}; }
  bool independent(const LinearForm& a, const LinearForm& b) const { return is_independent(q_, a, b); }
  LinearForm product(const LinearForm& a, const LinearForm& b) const { return a + b; }
  LinearForm act(const LinearForm& w, const LinearForm& u) const { return phi_(w + u); }

  const Map& phi() const { return phi_; }
  const InnerProduct& inner_product() const { return q_; }

 private:
  Map phi_;
  InnerProduct q_;
};

/// The phi-branched map: fold with beta_phi. Requires phi independent of the
/// identity on the forest's decorations, i.e. w orthogonal to w' implies phi(w)
/// orthogonal to w'. Throws LocalityViolation otherwise.
inline LinearForm branched(const BetaPhiTarget::Map& phi, const DecoratedForest& f, const InnerProduct& q) {
  require_properly_decorated(f, q);
  const auto decs = decorations(f);
  for (const auto& [i, a] : decs)
    for (const auto& [j, b] : decs)
      if (i != j && !is_independent(q, phi(a), b))
        throw LocalityViolation("phi is not independent of the identity: phi(d(" + i.to_string() +
                                ")) pairs nontrivially with d(" + j.to_string() + ")");
  return fold(f, BetaPhiTarget(phi, q));
}

/// Regularized integrals x^{-E} prod pi/sin(pi L) under
///   I^L(f x^{-E}) = f * pi/sin(pi(L + E)) * x^{-(L + E)}.
class SymbolicIntegralTarget {
 public:
  using value_type = RegularizedIntegral;

  explicit SymbolicIntegralTarget(InnerProduct q) : q_(std::move(q)) {}

  RegularizedIntegral unit() const { return {}; }

  bool independent(const RegularizedIntegral& a, const RegularizedIntegral& b) const {
    const auto fa = forms(a), fb = forms(b);
    for (const auto& x : fa)
      for (const auto& y : fb)
        if (!is_independent(q_, x, y)) return false;
    return true;
  }

  RegularizedIntegral product(const RegularizedIntegral& a, const RegularizedIntegral& b) const {
    RegularizedIntegral out = a;
    out.exponent += b.exponent;
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    return out;
  }

  bool independent(const LinearForm& w, const RegularizedIntegral& u) const {
    for (const auto& x : forms(u))
      if (!is_independent(q_, w, x)) return false;
    return true;
  }

  RegularizedIntegral act(const LinearForm& w, const RegularizedIntegral& u) const {
    RegularizedIntegral out = u;
    out.exponent += w;
    out.factors.push_back(out.exponent);
    return out;
  }

 private:
  static std::vector<LinearForm> forms(const RegularizedIntegral& u) {
    std::vector<LinearForm> out = u.factors;
    if (!u.exponent.is_zero()) out.push_back(u.exponent);
    return out;
  }

  InnerProduct q_;
};

inline SymbolicIntegralTarget symbolic_integral_target(const InnerProduct& q) { return SymbolicIntegralTarget(q); }

/// Outcome of checking the morphism conditions of a fold on one instance.
struct MorphismCheck {
  bool unit = false;           // fold(1) = 1_U
  bool locality = false;       // F1 independent of F2  =>  fold(F1) independent of fold(F2)
  bool multiplicative = false; // fold(F1 F2) = fold(F1) fold(F2)
  bool action = false;         // fold(B_+^w(F1)) = act(w, fold(F1))

  bool all() const { return unit && locality && multiplicative && action; }
};

/// Evaluates the morphism conditions on the pair (f1, f2) and decoration w.
/// f1, f2 must be independent and w independent of f1.
template <OperatedLocalityTarget Target>
MorphismCheck check_morphism(const DecoratedForest& f1, const DecoratedForest& f2, const LinearForm& w,
                             const InnerProduct& q, const Target& target) {
  MorphismCheck out;
  out.unit = fold(DecoratedForest::unit(), target) == target.unit();
  const auto v1 = fold(f1, target);
  const auto v2 = fold(f2, target);
  out.locality = target.independent(v1, v2);
  out.multiplicative = out.locality && fold(concat(f1, f2, q), target) == target.product(v1, v2);
  out.action = fold(DecoratedForest(graft(w, f1, q)), target) == target.act(w, v1);
  return out;
}

}  // namespace kreimer
