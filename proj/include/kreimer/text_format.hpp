#pragma once

// Forest text format.
//
//   forest := "1" | tree+
//   tree   := "(" weight tree* ")"
//   weight := rational ("p/q" or integer)           canonical mode
//           | "[" rational ("," rational)* "]"      explicit mode
//
// Explicit mode starts with a "Q=" line holding a symmetric rational matrix,
// rows separated by ';' and entries by ','. Surrounding brackets are optional.
// '#' starts a comment running to the end of the line.
//
// In canonical mode vertex k (preorder) is decorated by e_k and the pairing is
// diag(weights), so Q(d(v), d(v)) is the weight written for v.

#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/forest.hpp"
#include "kreimer/gram.hpp"
#include "kreimer/pairing.hpp"
#include "kreimer/rational.hpp"

namespace kreimer {

struct ParsedForest {
  DecoratedForest forest;
  InnerProduct q;
  bool explicit_mode = false;
};

enum class DecorationMode { automatic, canonical, explicit_vectors };

namespace detail {

class ForestParser {
 public:
  ForestParser(std::string_view text, DecorationMode mode) : text_(strip_comments(text)), mode_(mode) {}

  ParsedForest run() {
    skip_ws();
    const bool has_q = text_.compare(pos_, 2, "Q=") == 0;
    if (mode_ == DecorationMode::explicit_vectors && !has_q)
      throw ParseError("explicit mode requires a leading 'Q=' line");
    if (mode_ == DecorationMode::canonical && has_q)
      throw ParseError("a 'Q=' line is only allowed in explicit mode");
    explicit_ = has_q;

    ParsedForest out;
    out.explicit_mode = explicit_;
    if (explicit_) {
      pos_ += 2;
      q_ = parse_matrix();
    }

    skip_ws();
    std::vector<DecoratedTree> trees;
    if (peek() == '1') {
      ++pos_;
      skip_ws();
      if (pos_ != text_.size()) throw error("unexpected text after the empty forest '1'");
    } else {
      while (pos_ < text_.size()) {
        trees.push_back(parse_tree());
        skip_ws();
      }
      if (trees.empty()) throw error("empty input; write '1' for the empty forest");
    }
    out.forest = DecoratedForest(std::move(trees));

    if (explicit_) {
      out.q = q_;
      require_properly_decorated(out.forest, out.q);
    } else {
      out.q = InnerProduct::diagonal(weights_);
    }
    return out;
  }

 private:
  static std::string strip_comments(std::string_view text) {
    std::string out;
    bool comment = false;
    for (char c : text) {
      if (c == '#') comment = true;
      if (c == '\n') comment = false;
      if (!comment) out += c;
    }
    return out;
  }

  ParseError error(const std::string& what) const {
    return ParseError(what + " at offset " + std::to_string(pos_));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) throw error(std::string("expected '") + c + "'");
    ++pos_;
  }

  Rational parse_number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' || text_[pos_] == '-' ||
            text_[pos_] == '+'))
      ++pos_;
    if (start == pos_) throw error("expected a rational number");
    try {
      return parse_rational(std::string_view(text_).substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " at offset " + std::to_string(start));
    }
  }

  InnerProduct parse_matrix() {
    skip_ws();
    const bool bracketed = peek() == '[';
    if (bracketed) ++pos_;
    std::vector<std::vector<Rational>> rows(1);
    for (;;) {
      rows.back().push_back(parse_number());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() == ';') {
        ++pos_;
        rows.emplace_back();
      } else {
        break;
      }
    }
    if (bracketed) expect(']');
    const std::size_t n = rows.size();
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        throw ParseError("Q row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                         " entries, expected " + std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return InnerProduct(std::move(m));
  }

  LinearForm parse_vector() {
    expect('[');
    LinearForm::Coefficients coeffs;
    std::size_t index = 0;
    for (;;) {
      Rational c = parse_number();
      if (c != 0) coeffs.emplace(index, c);
      ++index;
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    expect(']');
    if (index != q_.dimension())
      throw ParseError("decoration has " + std::to_string(index) + " components but Q has dimension " +
                       std::to_string(q_.dimension()));
    return LinearForm(std::move(coeffs));
  }

  DecoratedTree parse_tree() {
    expect('(');
    skip_ws();
    DecoratedTree t;
    if (explicit_) {
      t.root_decoration = parse_vector();
    } else {
      if (peek() == '[') throw error("vector decorations need explicit mode (a leading 'Q=' line)");
      const std::size_t start = pos_;
      Rational w = parse_number();
      if (w <= 0)
        throw NonPositiveWeight("weight " + w.get_str() + " at offset " + std::to_string(start) +
                                " is not positive");
      t.root_decoration = LinearForm::basis(weights_.size());
      weights_.push_back(w);
    }
    skip_ws();
    while (peek() == '(') {
      t.children.push_back(parse_tree());
      skip_ws();
    }
    expect(')');
    return t;
  }

  std::string text_;
  DecorationMode mode_;
  std::size_t pos_ = 0;
  bool explicit_ = false;
  InnerProduct q_;
  std::vector<Rational> weights_;
};

inline void write_tree(const DecoratedTree& t, const InnerProduct& q, bool explicit_mode, std::string& out) {
  out += "(";
  if (explicit_mode) {
    out += "[";
    for (std::size_t i = 0; i < q.dimension(); ++i) {
      if (i) out += ",";
      out += t.root_decoration.coefficient(i).get_str();
    }
    out += "]";
  } else {
    out += inner(q, t.root_decoration, t.root_decoration).get_str();
  }
  for (const auto& c : t.children) {
    out += " ";
    write_tree(c, q, explicit_mode, out);
  }
  out += ")";
}

}  // namespace detail

/// Throws ParseError, NonPositiveWeight or NotProperlyDecorated.
inline ParsedForest parse_forest(std::string_view text, DecorationMode mode = DecorationMode::automatic) {
  return detail::ForestParser(text, mode).run();
}

/// True when every decoration is a distinct basis vector e_k and Q is diagonal,
/// i.e. the forest can be written with plain weights.
inline bool is_canonical_mode(const DecoratedForest& f, const InnerProduct& q) {
  if (!q.is_diagonal()) return false;
  std::set<std::size_t> seen;
  for (const auto& [id, form] : decorations(f)) {
    const auto& c = form.coefficients();
    if (c.size() != 1 || c.begin()->second != 1 || !seen.insert(c.begin()->first).second) return false;
  }
  return true;
}

/// Writes trees in stored order. Canonical-mode forests whose basis indices
/// follow preorder round-trip exactly; anything else is written explicitly.
inline std::string serialize(const DecoratedForest& f, const InnerProduct& q) {
  if (f.empty()) return "1";
  bool preorder_basis = is_canonical_mode(f, q);
  if (preorder_basis) {
    std::size_t k = 0;
    for (const auto& v : vertices(f))
      if (v.decoration.coefficients().begin()->first != k++) preorder_basis = false;
    preorder_basis = preorder_basis && k == q.dimension();
  }
  std::string out;
  if (!preorder_basis) {
    out += "Q=";
    const auto& m = q.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i) out += ";";
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) out += ",";
        out += m(i, j).get_str();
      }
    }
    out += "\n";
  }
  bool first = true;
  for (const auto& t : f.trees()) {
    if (!first) out += " ";
    detail::write_tree(t, q, !preorder_basis, out);
    first = false;
  }
  return out;
}

}  // namespace kreimer
