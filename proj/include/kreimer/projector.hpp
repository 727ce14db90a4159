#pragma once

// Holomorphic projection pi_+ of fractions g(z_w, w in W) / prod_{v in V} z_v,
// where the coordinates z_w stand for linearly independent forms L_w whose
// only geometric input is the Gram matrix Q(L_v, L_w).
//
// One reduction step for a pole set V:
//   L_w = sum_{v in V} a_wv L_v + L'_w  with L'_w orthogonal to span(V),
//   g(L) / prod L_v = g(L') / prod L_v  +  (g(L) - g(L')) / prod L_v.
// The first fraction is polar and is dropped. The difference is telescoped
// over the corrections a_wv L_v added one slot at a time; each telescoped
// difference is divisible by the pole it moved, which leaves a fraction with
// one pole fewer. pi_+ is linear, so all numerators landing on the same pole
// set are summed before that set is reduced in turn.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/gram.hpp"
#include "kreimer/linalg.hpp"
#include "kreimer/pipoly.hpp"
#include "kreimer/series.hpp"

namespace kreimer {

/// numerator(z_w, w in W) / prod_{v in poles} z_v, each pole simple.
class GermFraction {
 public:
  GermFraction(TruncSeries numerator, std::vector<VertexId> poles)
      : numerator_(std::move(numerator)), poles_(std::move(poles)) {
    std::sort(poles_.begin(), poles_.end());
    if (std::adjacent_find(poles_.begin(), poles_.end()) != poles_.end())
      throw VariableMismatch("repeated pole in a germ fraction");
    for (VertexId p : poles_) numerator_.position(p);
  }

  const TruncSeries& numerator() const { return numerator_; }
  const std::vector<VertexId>& poles() const { return poles_; }

  /// The same germ written over a larger pole set: the numerator is multiplied
  /// by the missing pole variables.
  GermFraction with_poles(const std::vector<VertexId>& poles) const {
    TruncSeries num = numerator_;
    for (VertexId p : poles)
      if (!std::binary_search(poles_.begin(), poles_.end(), p)) num = mul_by_var(num, p);
    GermFraction out(std::move(num), poles);
    for (VertexId p : poles_)
      if (!std::binary_search(out.poles_.begin(), out.poles_.end(), p))
        throw VariableMismatch("with_poles: target pole set must contain " + p.to_string());
    return out;
  }

 private:
  TruncSeries numerator_;
  std::vector<VertexId> poles_;
};

/// Gram data of the forms behind the series variables, with a shared cache of
/// solved projection systems. Copies share the cache; safe for concurrent use.
class ProjectionContext {
 public:
  /// Throws SingularGram unless the Gram matrix is positive definite.
  explicit ProjectionContext(GramMatrix gram) : gram_(std::move(gram)), cache_(std::make_shared<Cache>()) {
    if (!is_positive_definite(gram_.matrix())) throw SingularGram("gram matrix is not positive definite");
  }

  const GramMatrix& gram() const { return gram_; }

  /// Same forms with every pairing multiplied by c > 0.
  ProjectionContext scaled(const Rational& c) const { return ProjectionContext(gram_.scaled(c)); }

  /// Table a(w, v) over all gram vertices w (rows, gram order) and poles v
  /// (columns, in the given order) solving
  ///   sum_{v in V} Q(L_v, L_u) a_wv = Q(L_w, L_u)  for all u in V.
  std::shared_ptr<const RationalMatrix> coefficient_table(const std::vector<VertexId>& poles) const {
    std::vector<std::size_t> key;
    key.reserve(poles.size());
    for (VertexId v : poles) key.push_back(gram_.index_of(v));
    {
      std::shared_lock lock(cache_->mutex);
      auto it = cache_->tables.find(key);
      if (it != cache_->tables.end()) return it->second;
    }
    const auto& g = gram_.matrix();
    const std::size_t k = key.size(), n = gram_.size();
    RationalMatrix a(k, k), b(k, n);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a(i, j) = g(key[i], key[j]);
      for (std::size_t w = 0; w < n; ++w) b(i, w) = g(key[i], w);
    }
    auto x = solve(std::move(a), std::move(b));
    if (!x) throw SingularGram("gram matrix restricted to the pole set is singular");
    auto table = std::make_shared<RationalMatrix>(n, k);
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t i = 0; i < k; ++i) (*table)(w, i) = (*x)(i, w);
    std::unique_lock lock(cache_->mutex);
    return cache_->tables.emplace(std::move(key), std::move(table)).first->second;
  }

 private:
  struct Cache {
    std::shared_mutex mutex;
    std::map<std::vector<std::size_t>, std::shared_ptr<const RationalMatrix>> tables;
  };

  GramMatrix gram_;
  std::shared_ptr<Cache> cache_;
};

/// Coefficients a_wv of the orthogonal decomposition L_w = sum_v a_wv L_v + L'_w.
/// Throws SingularGram for an empty or degenerate pole set.
inline std::map<VertexId, Rational> project_coeffs(const ProjectionContext& ctx, const std::vector<VertexId>& poles,
                                                  VertexId w) {
  if (poles.empty()) throw SingularGram("project_coeffs needs a non-empty pole set");
  auto table = ctx.coefficient_table(poles);
  const std::size_t row = ctx.gram().index_of(w);
  std::map<VertexId, Rational> out;
  for (std::size_t i = 0; i < poles.size(); ++i) out.emplace(poles[i], (*table)(row, i));
  return out;
}

/// Order in which the corrections a_wv L_v are added during telescoping.
/// Every order yields the same projection; they differ in cost.
class TelescopeOrder {
 public:
  enum class Kind {
    /// Grouped by pole v; for each v the non-pole slots w first, then slot v.
    /// Each telescoping step is then one elementary substitution.
    grouped,
    /// Sorted by (w, v); each step is a full linear substitution.
    lexicographic,
    /// A fresh random permutation at every pole set; full substitutions.
    shuffled,
  };

  static TelescopeOrder grouped() { return TelescopeOrder(Kind::grouped, 0); }
  static TelescopeOrder lexicographic() { return TelescopeOrder(Kind::lexicographic, 0); }
  static TelescopeOrder shuffled(std::uint64_t seed) { return TelescopeOrder(Kind::shuffled, seed); }

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

 private:
  TelescopeOrder(Kind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}
  Kind kind_;
  std::uint64_t seed_;
};

namespace detail {

struct Correction {
  std::size_t slot;  // u: position of the argument slot that moves
  std::size_t pole;  // v: position of the pole variable
  Rational amount;   // a_uv
};

/// Telescoped numerators f_v (keyed by pole position) for one pole set.
inline std::map<std::size_t, TruncSeries> telescope(const TruncSeries& g, const std::vector<std::size_t>& poles,
                                                    const ProjectionContext& ctx, const TelescopeOrder& order,
                                                    std::mt19937_64& rng) {
  const auto& vars = g.variables();
  const std::size_t n = vars.size();
  std::vector<VertexId> pole_ids;
  for (std::size_t p : poles) pole_ids.push_back(vars[p]);
  const auto table = ctx.coefficient_table(pole_ids);
  std::vector<bool> is_pole(n, false);
  for (std::size_t p : poles) is_pole[p] = true;

  // a(u, i) for slot u and the i-th pole.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(poles.size()));
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t row = ctx.gram().index_of(vars[u]);
    for (std::size_t i = 0; i < poles.size(); ++i) a[u][i] = (*table)(row, i);
  }

  std::vector<Correction> corrections;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t u = 0; u < n; ++u)
      if (!is_pole[u] && a[u][i] != 0) corrections.push_back({u, poles[i], a[u][i]});
    corrections.push_back({poles[i], poles[i], 1});
  }

  std::map<std::size_t, TruncSeries> f;
  auto deposit = [&](std::size_t pole, TruncSeries h) {
    auto it = f.find(pole);
    if (it == f.end()) {
      f.emplace(pole, std::move(h));
    } else {
      it->second += h;
    }
  };

  if (order.kind() == TelescopeOrder::Kind::grouped) {
    // Walk back from g = g(L) one pole group at a time. Undoing the group of v
    // sets z_v to 0 and then shears z_u <- z_u - a_uv z_v for every non-pole u;
    // this is valid because column u of the current substitution matrix is e_u.
    // The steps inside a group telescope to a single difference.
    // With C = D + C0 split by divisibility by z_v and S(C0) = C0 + R, the
    // group contributes (D - R) / z_v and leaves C0 + R.
    TruncSeries current = g;
    for (std::size_t i = poles.size(); i-- > 0;) {
      const VertexId v = vars[poles[i]];
      std::vector<std::pair<VertexId, Rational>> targets;
      for (std::size_t u = 0; u < n; ++u)
        if (!is_pole[u] && a[u][i] != 0) targets.emplace_back(vars[u], -a[u][i]);
      auto [divisible, rest] = split_by_var(std::move(current), v);
      TruncSeries shifted = shear_part(rest, v, targets, 1);
      deposit(poles[i], div_by_var(std::move(divisible) - shifted, v));
      current = std::move(rest) + shifted;
    }
    return f;
  }

  if (order.kind() == TelescopeOrder::Kind::lexicographic) {
    std::sort(corrections.begin(), corrections.end(), [&](const Correction& x, const Correction& y) {
      return std::pair(vars[x.slot], vars[x.pole]) < std::pair(vars[y.slot], vars[y.pole]);
    });
  } else {
    std::shuffle(corrections.begin(), corrections.end(), rng);
  }

  // Slot images of L' in z coordinates: z_w - sum_v a_wv z_v (0 for poles).
  std::vector<VariableCombination> slot(n);
  for (std::size_t w = 0; w < n; ++w) {
    if (is_pole[w]) continue;
    slot[w][vars[w]] = 1;
    for (std::size_t i = 0; i < poles.size(); ++i)
      if (a[w][i] != 0) slot[w][vars[poles[i]]] -= a[w][i];
  }
  auto evaluate = [&]() {
    Substitution sub;
    for (std::size_t w = 0; w < n; ++w) {
      VariableCombination combo;
      for (const auto& [var, c] : slot[w])
        if (c != 0) combo.emplace(var, c);
      sub.emplace(vars[w], std::move(combo));
    }
    return subst_linear(g, sub);
  };
  TruncSeries previous = evaluate();  // g(L'), polar
  for (const auto& corr : corrections) {
    slot[corr.slot][vars[corr.pole]] += corr.amount;
    TruncSeries current = evaluate();
    deposit(corr.pole, div_by_var(current - previous, vars[corr.pole]));
    previous = std::move(current);
  }
  return f;
}

}  // namespace detail

/// Taylor expansion of pi_+(frac) to degree (numerator truncation - |poles|).
/// Throws InsufficientTruncation, SingularGram, NotDivisible (internal error).
inline TruncSeries piplus_expand(const GermFraction& frac, const ProjectionContext& ctx,
                                 const TelescopeOrder& order = TelescopeOrder::grouped()) {
  const TruncSeries& num = frac.numerator();
  const auto& vars = num.variables();
  const std::size_t k = frac.poles().size();
  if (num.truncation() < k)
    throw InsufficientTruncation("numerator truncation " + std::to_string(num.truncation()) + " is below the " +
                                 std::to_string(k) + " poles to be removed");
  for (VertexId v : vars) ctx.gram().index_of(v);

  std::vector<std::size_t> start;
  for (VertexId p : frac.poles()) start.push_back(num.position(p));
  std::sort(start.begin(), start.end());

  // Pending numerators per pole set, largest sets first.
  using Key = std::pair<std::size_t, std::vector<std::size_t>>;
  auto larger_first = [](const Key& x, const Key& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  };
  std::map<Key, TruncSeries, decltype(larger_first)> pending(larger_first);
  pending.emplace(Key{k, start}, num);

  std::mt19937_64 rng(order.seed());
  TruncSeries result(vars, num.truncation() - static_cast<unsigned>(k));
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const auto& poles = node.key().second;
    // Parts of degree below |poles| project to homogeneous holomorphic germs
    // of negative degree, i.e. to zero.
    TruncSeries g = drop_degrees_below(std::move(node.mapped()), static_cast<unsigned>(node.key().first));
    if (poles.empty()) {
      result += g;
      continue;
    }
    for (auto& [pole, fv] : detail::telescope(g, poles, ctx, order, rng)) {
      std::vector<std::size_t> rest;
      for (std::size_t p : poles)
        if (p != pole) rest.push_back(p);
      Key key{rest.size(), std::move(rest)};
      auto it = pending.find(key);
      if (it == pending.end()) {
        pending.emplace(std::move(key), std::move(fv));
      } else {
        it->second += fv;
      }
    }
  }
  return result;
}

/// ev_0 o pi_+ of the fraction: the minimal-subtraction value at zero.
inline PiPoly ev0_piplus(const GermFraction& frac, const ProjectionContext& ctx,
                         const TelescopeOrder& order = TelescopeOrder::grouped()) {
  return eval0(piplus_expand(frac, ctx, order));
}

}  // namespace kreimer
