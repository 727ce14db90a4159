#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/forest.hpp"
#include "kreimer/linalg.hpp"
#include "kreimer/pairing.hpp"

namespace kreimer {

/// True iff every decoration is nonzero and distinct vertices carry
/// pairwise Q-orthogonal decorations.
inline bool check_properly_decorated(const DecoratedForest& f, const InnerProduct& q) {
  const auto decs = decorations(f);
  for (std::size_t i = 0; i < decs.size(); ++i) {
    if (decs[i].second.is_zero()) return false;
    for (std::size_t j = i + 1; j < decs.size(); ++j)
      if (!is_independent(q, decs[i].second, decs[j].second)) return false;
  }
  return true;
}

/// Same check, throwing NotProperlyDecorated with the offending vertex or pair.
inline void require_properly_decorated(const DecoratedForest& f, const InnerProduct& q) {
  const auto decs = decorations(f);
  for (std::size_t i = 0; i < decs.size(); ++i) {
    if (decs[i].second.is_zero())
      throw NotProperlyDecorated("vertex " + decs[i].first.to_string() + " has a zero decoration");
    for (std::size_t j = i + 1; j < decs.size(); ++j)
      if (!is_independent(q, decs[i].second, decs[j].second))
        throw NotProperlyDecorated("vertices " + decs[i].first.to_string() + " (" + decs[i].second.to_string() +
                                   ") and " + decs[j].first.to_string() + " (" + decs[j].second.to_string() +
                                   ") are not independent");
  }
}

/// Symmetric matrix of Q(L_v, L_w) indexed by vertices (preorder).
class GramMatrix {
 public:
  GramMatrix() = default;
  GramMatrix(std::vector<VertexId> order, RationalMatrix entries) : order_(std::move(order)), entries_(std::move(entries)) {
    if (entries_.rows() != order_.size() || entries_.cols() != order_.size())
      throw IndexOutOfRange("gram matrix size does not match its vertex list");
    for (std::size_t i = 0; i < order_.size(); ++i) index_.emplace(order_[i], i);
  }

  const std::vector<VertexId>& vertices() const { return order_; }
  const RationalMatrix& matrix() const { return entries_; }
  std::size_t size() const { return order_.size(); }

  std::size_t index_of(VertexId v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw IndexOutOfRange("vertex " + v.to_string() + " is not in the gram matrix");
    return it->second;
  }

  const Rational& entry(VertexId v, VertexId w) const { return entries_(index_of(v), index_of(w)); }

  GramMatrix scaled(const Rational& c) const { return GramMatrix(order_, entries_.scaled(c)); }

  friend bool operator==(const GramMatrix& a, const GramMatrix& b) {
    return a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<VertexId> order_;
  RationalMatrix entries_;
  std::map<VertexId, std::size_t> index_;
};

/// Gram matrix by the subtree overlap rule: Q(L_v, L_w) is the total weight
/// Q(d(u), d(u)) over the smaller of F_v, F_w when one contains the other,
/// and 0 when they are disjoint.
inline GramMatrix gram(const DecoratedForest& f, const InnerProduct& q) {
  require_properly_decorated(f, q);
  const auto vs = vertices(f);
  const std::size_t n = vs.size();
  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace(vs[i].id, i);

  // Subtree weight sums, accumulated leaves-first (reverse preorder).
  std::vector<Rational> subtree_weight(n);
  for (std::size_t i = 0; i < n; ++i) subtree_weight[i] = inner(q, vs[i].decoration, vs[i].decoration);
  for (std::size_t i = n; i-- > 0;)
    if (vs[i].parent) subtree_weight[pos.at(*vs[i].parent)] += subtree_weight[i];

  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = subtree_weight[i];
    // Walk up from i: every ancestor a satisfies F_i inside F_a.
    for (auto p = vs[i].parent; p; p = vs[pos.at(*p)].parent) {
      const std::size_t a = pos.at(*p);
      m(i, a) = subtree_weight[i];
      m(a, i) = subtree_weight[i];
    }
  }
  std::vector<VertexId> order;
  order.reserve(n);
  for (const auto& v : vs) order.push_back(v.id);
  return GramMatrix(std::move(order), std::move(m));
}

/// Gram matrix straight from the subtree sums and the pairing.
inline GramMatrix gram_from_subtree_sums(const DecoratedForest& f, const InnerProduct& q) {
  const auto vs = vertices(f);
  const auto sums = subtree_sums(f);
  const std::size_t n = vs.size();
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = inner(q, sums.at(vs[i].id), sums.at(vs[j].id));
      m(j, i) = m(i, j);
    }
  std::vector<VertexId> order;
  for (const auto& v : vs) order.push_back(v.id);
  return GramMatrix(std::move(order), std::move(m));
}

}  // namespace kreimer
