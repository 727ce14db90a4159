#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/pairing.hpp"

namespace kreimer {

/// Opaque vertex token. Fresh ids are unique within the process.
class VertexId {
 public:
  constexpr explicit VertexId(std::uint64_t value) : value_(value) {}

  static VertexId fresh() {
    static std::atomic<std::uint64_t> next{0};
    return VertexId(next.fetch_add(1, std::memory_order_relaxed));
  }

  constexpr std::uint64_t value() const { return value_; }
  std::string to_string() const { return "v" + std::to_string(value_); }

  friend constexpr auto operator<=>(const VertexId&, const VertexId&) = default;

 private:
  std::uint64_t value_;
};

/// A rooted tree; every vertex carries one decoration. Children are unordered.
struct DecoratedTree {
  LinearForm root_decoration;
  std::vector<DecoratedTree> children;
  VertexId root_id = VertexId::fresh();
};

/// Multiset of decorated trees; the empty forest is the monoid unit 1.
class DecoratedForest {
 public:
  DecoratedForest() = default;
  explicit DecoratedForest(std::vector<DecoratedTree> trees) : trees_(std::move(trees)) {}
  explicit DecoratedForest(DecoratedTree tree) { trees_.push_back(std::move(tree)); }

  static DecoratedForest unit() { return {}; }

  const std::vector<DecoratedTree>& trees() const { return trees_; }
  bool empty() const { return trees_.empty(); }

 private:
  std::vector<DecoratedTree> trees_;
};

/// Flattened view of one vertex, produced in preorder.
struct VertexInfo {
  VertexId id;
  LinearForm decoration;
  std::optional<VertexId> parent;
  std::size_t depth = 0;
};

namespace detail {

template <class Visit>
void walk(const DecoratedTree& t, std::optional<VertexId> parent, std::size_t depth, Visit& visit) {
  visit(t, parent, depth);
  for (const auto& c : t.children) walk(c, t.root_id, depth + 1, visit);
}

inline std::size_t tree_size(const DecoratedTree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += tree_size(c);
  return n;
}

inline std::string tree_encoding(const DecoratedTree& t) {
  std::vector<std::string> kids;
  kids.reserve(t.children.size());
  for (const auto& c : t.children) kids.push_back(tree_encoding(c));
  std::sort(kids.begin(), kids.end());
  std::string out = "(" + t.root_decoration.key();
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

inline void collect_decorations(const DecoratedTree& t, std::vector<std::pair<VertexId, LinearForm>>& out) {
  out.emplace_back(t.root_id, t.root_decoration);
  for (const auto& c : t.children) collect_decorations(c, out);
}

inline void refresh_ids(DecoratedTree& t) {
  t.root_id = VertexId::fresh();
  for (auto& c : t.children) refresh_ids(c);
}

inline void shift_tree(DecoratedTree& t, std::size_t offset) {
  t.root_decoration = t.root_decoration.shifted(offset);
  for (auto& c : t.children) shift_tree(c, offset);
}

}  // namespace detail

/// All vertices in preorder (trees in stored order, each root before its children).
inline std::vector<VertexInfo> vertices(const DecoratedForest& f) {
  std::vector<VertexInfo> out;
  auto visit = [&](const DecoratedTree& t, std::optional<VertexId> parent, std::size_t depth) {
    out.push_back({t.root_id, t.root_decoration, parent, depth});
  };
  for (const auto& t : f.trees()) detail::walk(t, std::nullopt, 0, visit);
  return out;
}

inline std::vector<std::pair<VertexId, LinearForm>> decorations(const DecoratedForest& f) {
  std::vector<std::pair<VertexId, LinearForm>> out;
  for (const auto& t : f.trees()) detail::collect_decorations(t, out);
  return out;
}

/// Vertex count.
inline std::size_t degree(const DecoratedForest& f) {
  std::size_t n = 0;
  for (const auto& t : f.trees()) n += detail::tree_size(t);
  return n;
}

inline std::size_t degree(const DecoratedTree& t) { return detail::tree_size(t); }

/// Order-independent encoding: equal iff the forests agree up to permuting
/// sibling subtrees and trees. Vertex ids do not take part.
inline std::string canonical(const DecoratedForest& f) {
  std::vector<std::string> parts;
  for (const auto& t : f.trees()) parts.push_back(detail::tree_encoding(t));
  std::sort(parts.begin(), parts.end());
  std::string out = "[";
  for (const auto& p : parts) out += p;
  return out + "]";
}

inline std::string canonical(const DecoratedTree& t) { return canonical(DecoratedForest(t)); }

/// Disjoint product. Every decoration of `a` must be Q-orthogonal to every
/// decoration of `b`. If the operands share vertex ids, `b` is re-labelled.
inline DecoratedForest concat(const DecoratedForest& a, const DecoratedForest& b, const InnerProduct& q) {
  const auto da = decorations(a);
  const auto db = decorations(b);
  for (const auto& [ia, fa] : da)
    for (const auto& [ib, fb] : db)
      if (!is_independent(q, fa, fb))
        throw LocalityViolation("cannot concatenate: vertex " + ia.to_string() + " (" + fa.to_string() +
                                ") pairs nontrivially with vertex " + ib.to_string() + " (" + fb.to_string() + ")");
  std::set<VertexId> ids;
  for (const auto& [id, form] : da) ids.insert(id);
  bool clash = std::any_of(db.begin(), db.end(), [&](const auto& p) { return ids.count(p.first) > 0; });

  std::vector<DecoratedTree> trees = a.trees();
  for (auto t : b.trees()) {
    if (clash) detail::refresh_ids(t);
    trees.push_back(std::move(t));
  }
  return DecoratedForest(std::move(trees));
}

/// B_+^omega: a new root decorated `omega` carrying the trees of `f` as children.
inline DecoratedTree graft(const LinearForm& omega, const DecoratedForest& f, const InnerProduct& q) {
  for (const auto& [id, form] : decorations(f))
    if (!is_independent(q, omega, form))
      throw LocalityViolation("cannot graft " + omega.to_string() + ": it pairs nontrivially with vertex " +
                              id.to_string() + " (" + form.to_string() + ")");
  return DecoratedTree{omega, f.trees(), VertexId::fresh()};
}

/// Single-vertex tree.
inline DecoratedTree leaf(const LinearForm& omega) { return DecoratedTree{omega, {}, VertexId::fresh()}; }

struct EmptyForest {};
struct ProductOfTrees {
  std::vector<DecoratedTree> trees;
};
struct GraftedTree {
  LinearForm decoration;
  DecoratedForest children;
};
using Decomposition = std::variant<EmptyForest, ProductOfTrees, GraftedTree>;

/// The unique structural form: 1, a product of >= 2 trees, or B_+^omega(F').
inline Decomposition decompose(const DecoratedForest& f) {
  if (f.empty()) return EmptyForest{};
  if (f.trees().size() >= 2) return ProductOfTrees{f.trees()};
  const auto& t = f.trees().front();
  return GraftedTree{t.root_decoration, DecoratedForest(t.children)};
}

/// L_v = sum of the decorations of the maximal subtree rooted at v.
inline std::map<VertexId, LinearForm> subtree_sums(const DecoratedForest& f) {
  std::map<VertexId, LinearForm> out;
  std::function<LinearForm(const DecoratedTree&)> rec = [&](const DecoratedTree& t) {
    LinearForm sum = t.root_decoration;
    for (const auto& c : t.children) sum += rec(c);
    out[t.root_id] = sum;
    return sum;
  };
  for (const auto& t : f.trees()) rec(t);
  return out;
}

/// Moves every decoration's basis indices up by `offset` (ids are kept).
inline DecoratedForest shift_basis(const DecoratedForest& f, std::size_t offset) {
  std::vector<DecoratedTree> trees = f.trees();
  for (auto& t : trees) detail::shift_tree(t, offset);
  return DecoratedForest(std::move(trees));
}

}  // namespace kreimer
