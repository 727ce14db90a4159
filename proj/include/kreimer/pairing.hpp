#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kreimer/errors.hpp"
#include "kreimer/linalg.hpp"
#include "kreimer/rational.hpp"

namespace kreimer {

/// Sparse rational covector sum_i c_i e_i. Zero coefficients are never stored.
class LinearForm {
 public:
  using Coefficients = std::map<std::size_t, Rational>;

  LinearForm() = default;
  explicit LinearForm(Coefficients coeffs) : coeffs_(std::move(coeffs)) { prune(); }

  static LinearForm basis(std::size_t index, Rational coeff = 1) {
    LinearForm f;
    if (coeff != 0) f.coeffs_.emplace(index, std::move(coeff));
    return f;
  }

  const Coefficients& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational coefficient(std::size_t index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    out.reserve(coeffs_.size());
    for (const auto& [i, c] : coeffs_) out.push_back(i);
    return out;
  }

  /// Largest index in the support plus one (0 for the zero form).
  std::size_t extent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first + 1; }

  LinearForm& operator+=(const LinearForm& other) {
    for (const auto& [i, c] : other.coeffs_) {
      auto& slot = coeffs_[i];
      slot += c;
      if (slot == 0) coeffs_.erase(i);
    }
    return *this;
  }
  LinearForm& operator-=(const LinearForm& other) {
    for (const auto& [i, c] : other.coeffs_) {
      auto& slot = coeffs_[i];
      slot -= c;
      if (slot == 0) coeffs_.erase(i);
    }
    return *this;
  }
  LinearForm& operator*=(const Rational& s) {
    if (s == 0) {
      coeffs_.clear();
    } else {
      for (auto& [i, c] : coeffs_) c *= s;
    }
    return *this;
  }

  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(const Rational& s, LinearForm a) { return a *= s; }

  /// Moves every basis index up by `offset`.
  LinearForm shifted(std::size_t offset) const {
    LinearForm out;
    for (const auto& [i, c] : coeffs_) out.coeffs_.emplace(i + offset, c);
    return out;
  }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend bool operator<(const LinearForm& a, const LinearForm& b) { return a.coeffs_ < b.coeffs_; }

  /// Human-readable, e.g. "e0 + 2/3*e1 - e4"; "0" for the zero form.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : coeffs_) {
      Rational mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (mag != 1) out += kreimer::to_string(mag) + "*";
      out += "e" + std::to_string(i);
      first = false;
    }
    return out;
  }

  /// Stable encoding used inside canonical forest encodings.
  std::string key() const {
    std::string out = "{";
    for (const auto& [i, c] : coeffs_) out += std::to_string(i) + ":" + c.get_str() + ",";
    out += "}";
    return out;
  }

 private:
  void prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (it->second == 0) {
        it = coeffs_.erase(it);
      } else {
        it->second.canonicalize();
        ++it;
      }
    }
  }

  Coefficients coeffs_;
};

/// Symmetric positive-definite rational pairing on the basis e_0 .. e_{n-1}.
class InnerProduct {
 public:
  InnerProduct() = default;

  /// Throws ParseError when `matrix` is not symmetric positive definite.
  explicit InnerProduct(RationalMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || !matrix_.is_symmetric())
      throw ParseError("inner product matrix is not symmetric");
    if (!is_positive_definite(matrix_)) throw ParseError("inner product matrix is not positive definite");
    diagonal_ = matrix_.is_diagonal();
  }

  static InnerProduct identity(std::size_t n) { return InnerProduct(RationalMatrix::identity(n)); }

  /// Throws NonPositiveWeight for weights <= 0.
  static InnerProduct diagonal(const std::vector<Rational>& weights) {
    RationalMatrix m(weights.size(), weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0)
        throw NonPositiveWeight("weight " + weights[i].get_str() + " at index " + std::to_string(i) +
                                " is not positive");
      m(i, i) = weights[i];
    }
    return InnerProduct(std::move(m));
  }

  /// Block-diagonal sum: indices of `b` are shifted by a.dimension().
  static InnerProduct direct_sum(const InnerProduct& a, const InnerProduct& b) {
    const std::size_t n = a.dimension(), m = b.dimension();
    RationalMatrix out(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = a.matrix_(i, j);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = b.matrix_(i, j);
    return InnerProduct(std::move(out));
  }

  std::size_t dimension() const { return matrix_.rows(); }
  const RationalMatrix& matrix() const { return matrix_; }
  bool is_diagonal() const { return diagonal_; }

  InnerProduct scaled(const Rational& c) const { return InnerProduct(matrix_.scaled(c)); }

  friend bool operator==(const InnerProduct& a, const InnerProduct& b) { return a.matrix_ == b.matrix_; }

 private:
  RationalMatrix matrix_;
  bool diagonal_ = true;
};

/// Q(a, b). Throws IndexOutOfRange when a support leaves Q's active index set.
inline Rational inner(const InnerProduct& q, const LinearForm& a, const LinearForm& b) {
  const std::size_t n = q.dimension();
  if (a.extent() > n || b.extent() > n)
    throw IndexOutOfRange("linear form " + (a.extent() > n ? a : b).to_string() +
                          " has support outside the inner product's " + std::to_string(n) +
                          " dimensions");
  const auto& m = q.matrix();
  Rational sum = 0;
  if (q.is_diagonal()) {
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    auto ia = ca.begin();
    auto ib = cb.begin();
    while (ia != ca.end() && ib != cb.end()) {
      if (ia->first < ib->first) {
        ++ia;
      } else if (ib->first < ia->first) {
        ++ib;
      } else {
        sum += ia->second * ib->second * m(ia->first, ia->first);
        ++ia;
        ++ib;
      }
    }
    return sum;
  }
  for (const auto& [i, ci] : a.coefficients())
    for (const auto& [j, cj] : b.coefficients()) sum += ci * cj * m(i, j);
  return sum;
}

/// Locality relation on forms: Q-orthogonality.
inline bool is_independent(const InnerProduct& q, const LinearForm& a, const LinearForm& b) {
  return inner(q, a, b) == 0;
}

}  // namespace kreimer
