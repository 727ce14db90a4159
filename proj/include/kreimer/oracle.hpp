#pragma once

// Independent verification paths: numerical quadrature of the nested integrals
// and a literal subset-sum version of the renormalization pipeline.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/forest.hpp"
#include "kreimer/gram.hpp"
#include "kreimer/pairing.hpp"
#include "kreimer/pipoly.hpp"
#include "kreimer/projector.hpp"
#include "kreimer/renorm.hpp"
#include "kreimer/series.hpp"

namespace kreimer {

struct QuadConfig {
  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-12;
  /// Halvings of the tanh-sinh step before giving up.
  std::size_t max_refinements = 15;
};

/// Numeric values of the basis vectors; a linear form evaluates to sum c_i x_i.
class NumericAssignment {
 public:
  NumericAssignment() = default;
  explicit NumericAssignment(std::map<std::size_t, double> values) : values_(std::move(values)) {}

  void set(std::size_t index, double value) { values_[index] = value; }
  const std::map<std::size_t, double>& values() const { return values_; }

  /// Missing basis indices count as 0.
  double operator()(const LinearForm& form) const {
    double out = 0;
    for (const auto& [i, c] : form.coefficients()) {
      auto it = values_.find(i);
      if (it != values_.end()) out += c.get_d() * it->second;
    }
    return out;
  }

 private:
  std::map<std::size_t, double> values_;
};

namespace detail {

inline void require_quad_config(const QuadConfig& cfg) {
  if (!(cfg.relative_tolerance > 0) || !(cfg.absolute_tolerance > 0))
    throw DomainError("quadrature tolerances must be positive");
}

inline void require_in_strip(double a, const std::string& what) {
  if (!(a > 0 && a < 1)) throw DomainError(what + " = " + std::to_string(a) + " lies outside (0, 1)");
}

/// int_0^inf g(u) du with u = s/r, s = t, r = 1 - t; integrand(s, r) must already
/// include the Jacobian. Both s and r are resolved to full relative accuracy
/// near their endpoint.
/// slack widens the accepted error estimate for integrands that are
/// themselves quadratures; their noise shows up in the estimate.
template <class Integrand>
double integrate_unit(const Integrand& integrand, const QuadConfig& cfg, bool check, const std::string& what,
                      double slack = 1) {
  boost::math::quadrature::tanh_sinh<double> rule(cfg.max_refinements);
  auto f = [&](double t, double tc) {
    const double s = tc <= 0 ? t : 1 - tc;
    const double r = tc <= 0 ? 1 - t : tc;
    return integrand(s, r);
  };
  double error = 0, l1 = 0;
  const double value = rule.integrate(f, 0.0, 1.0, cfg.relative_tolerance / 10, &error, &l1);
  if (check && (!std::isfinite(value) ||
                error > slack * std::max(cfg.absolute_tolerance, cfg.relative_tolerance * std::abs(value)))) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", error);
    throw ConvergenceFailure(what + ": error estimate " + buf + " exceeds tolerance");
  }
  return value;
}

inline double quad_forest(const DecoratedForest& f, const std::map<VertexId, double>& ell, double x,
                          const QuadConfig& cfg, bool check);

inline std::size_t height(const DecoratedTree& t) {
  std::size_t h = 0;
  for (const auto& c : t.children) h = std::max(h, height(c));
  return h + 1;
}

// R(B^d(F))(x) = x^{-d} int_0^inf R(F)(x u) u^{-d} / (u + 1) du.
// After u = s/r the integrand is R(F)(x s/r) s^{-d} r^{d-1}.
inline double quad_tree_rec(const DecoratedTree& t, const std::map<VertexId, double>& ell, double x,
                            const QuadConfig& cfg, bool check) {
  const double d = ell.at(t.root_id);
  const DecoratedForest inner_forest(t.children);
  auto integrand = [&](double s, double r) {
    const double inner_value = inner_forest.empty() ? 1.0 : quad_forest(inner_forest, ell, x * s / r, cfg, false);
    const double v = inner_value * std::pow(s, -d) * std::pow(r, d - 1);
    return std::isfinite(v) ? v : 0.0;
  };
  const double slack = std::pow(10.0, static_cast<double>(height(t)) - 1);
  return std::pow(x, -d) *
         integrate_unit(integrand, cfg, check, "integral at vertex " + t.root_id.to_string(), slack);
}

inline double quad_forest(const DecoratedForest& f, const std::map<VertexId, double>& ell, double x,
                          const QuadConfig& cfg, bool check) {
  double out = 1;
  for (const auto& t : f.trees()) out *= quad_tree_rec(t, ell, x, cfg, check);
  return out;
}

}  // namespace detail

/// int_0^inf y^{-a} / (y + x) dy. Throws DomainError, ConvergenceFailure.
inline double quad_single(double a, double x, const QuadConfig& cfg = {}) {
  detail::require_quad_config(cfg);
  detail::require_in_strip(a, "exponent");
  if (!(x > 0)) throw DomainError("evaluation point x must be positive");
  auto integrand = [&](double s, double r) { return std::pow(s, -a) * std::pow(r, a - 1) / (s + x * r); };
  return detail::integrate_unit(integrand, cfg, true, "single integral");
}

/// Nested quadrature of R(F)(x), with each grafting step integrated numerically.
/// The decoration values come from assign. Throws DomainError when some L_v is
/// outside (0, 1); ConvergenceFailure.
inline double quad_tree(const DecoratedForest& f, const NumericAssignment& assign, double x,
                        const QuadConfig& cfg = {}) {
  detail::require_quad_config(cfg);
  if (!(x > 0)) throw DomainError("evaluation point x must be positive");
  std::map<VertexId, double> ell;
  for (const auto& [id, sum] : subtree_sums(f)) detail::require_in_strip(assign(sum), "L at vertex " + id.to_string());
  for (const auto& v : vertices(f)) ell[v.id] = assign(v.decoration);
  return detail::quad_forest(f, ell, x, cfg, true);
}

/// x^{-E} prod pi / sin(pi L) at the given assignment.
inline double closed_form_value(const RegularizedIntegral& r, const NumericAssignment& assign, double x) {
  const double pi = boost::math::constants::pi<double>();
  double out = std::pow(x, -assign(r.exponent));
  for (const auto& l : r.factors) out *= pi / std::sin(pi * assign(l));
  return out;
}

/// Random values with every L_v in [lo, hi] inside (0, 1). For decorations that
/// are positive combinations the values are drawn positive and rescaled; other
/// decorations fall back to rejection sampling. Throws DomainError if nothing
/// admissible turns up.
template <class Rng>
NumericAssignment random_admissible_assignment(const DecoratedForest& f, Rng& rng, double lo = 0.05,
                                               double hi = 0.95) {
  NumericAssignment out;
  if (f.empty()) return out;
  std::vector<std::size_t> indices;
  bool nonnegative = true;
  for (const auto& [id, d] : decorations(f))
    for (const auto& [i, c] : d.coefficients()) {
      indices.push_back(i);
      if (c < 0) nonnegative = false;
    }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto sums = subtree_sums(f);
  auto admissible = [&](const NumericAssignment& a) {
    for (const auto& [id, s] : sums) {
      const double v = a(s);
      if (!(v >= lo && v <= hi)) return false;
    }
    return true;
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    NumericAssignment a;
    for (auto i : indices) a.set(i, nonnegative ? 0.1 + unit(rng) : 2 * unit(rng) - 1);
    if (nonnegative) {
      double top = 0;
      for (const auto& [id, s] : sums) top = std::max(top, a(s));
      const double target = lo + (hi - lo) * (0.3 + 0.7 * unit(rng));
      NumericAssignment scaled;
      for (const auto& [i, v] : a.values()) scaled.set(i, v * target / top);
      a = scaled;
    }
    if (admissible(a)) return a;
  }
  throw DomainError("no admissible numeric assignment found for " + canonical(f));
}

/// The literal expansion of R_1 into 2^n terms prod_{v in V} 1/z_v prod_{v not in V} h(z_v),
/// each projected on its own with a randomized telescoping order.
inline PiPoly renorm_subset_oracle(const DecoratedForest& f, const InnerProduct& q, unsigned truncation,
                                   std::uint64_t seed = 0) {
  require_properly_decorated(f, q);
  const std::size_t n = degree(f);
  if (n > 12) throw DomainError("subset oracle is limited to 12 vertices, got " + std::to_string(n));
  if (truncation < n)
    throw InsufficientTruncation("truncation " + std::to_string(truncation) + " is below the forest degree " +
                                 std::to_string(n));
  std::vector<VertexId> vars;
  for (const auto& v : vertices(f)) vars.push_back(v.id);
  const ProjectionContext ctx(gram(f, q));

  std::vector<TruncSeries> h;
  for (VertexId v : vars) h.push_back(h_series(v, truncation).embedded(vars));

  std::mt19937_64 rng(seed);
  PiPoly total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<VertexId> poles;
    TruncSeries numerator = TruncSeries::constant(vars, truncation, PiPoly(1));
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i))
        poles.push_back(vars[i]);
      else
        numerator = numerator * h[i];
    }
    total += ev0_piplus(GermFraction(std::move(numerator), poles), ctx, TelescopeOrder::shuffled(rng()));
  }
  return total;
}

inline PiPoly renorm_subset_oracle(const DecoratedForest& f, const InnerProduct& q) {
  return renorm_subset_oracle(f, q, static_cast<unsigned>(degree(f)) + 2);
}

}  // namespace kreimer
