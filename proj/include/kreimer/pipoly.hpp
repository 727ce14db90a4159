#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kreimer/rational.hpp"

namespace kreimer {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

inline HighPrecision to_high_precision(const Rational& r) {
  return HighPrecision(r.get_num().get_str()) / HighPrecision(r.get_den().get_str());
}

/// Polynomial in the formal symbol Pi (standing for pi^2) with rational coefficients.
class PiPoly {
 public:
  PiPoly() = default;
  PiPoly(const Rational& c) {  // NOLINT: implicit so rationals act as constants.
    if (c != 0) coeffs_.push_back(c);
  }
  PiPoly(int c) : PiPoly(Rational(c)) {}  // NOLINT
  explicit PiPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// c * Pi^k.
  static PiPoly monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return PiPoly(std::move(v));
  }

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of Pi^k.
  Rational operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  PiPoly& operator+=(const PiPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  PiPoly& operator-=(const PiPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  PiPoly& operator*=(const Rational& s) {
    if (s == 0) {
      coeffs_.clear();
    } else {
      for (auto& c : coeffs_) c *= s;
    }
    return *this;
  }
  PiPoly& operator*=(const PiPoly& o) { return *this = *this * o; }

  friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
  friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
  friend PiPoly operator-(PiPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend PiPoly operator*(PiPoly a, const Rational& s) { return a *= s; }
  friend PiPoly operator*(const Rational& s, PiPoly a) { return a *= s; }
  friend PiPoly operator*(const PiPoly& a, const PiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return PiPoly(std::move(out));
  }

  friend bool operator==(const PiPoly&, const PiPoly&) = default;

  /// Ascending powers of pi^2, e.g. "1/3 - pi^2/4 + 5*pi^4/18"; "0" when zero.
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (c == 0) continue;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      const Rational mag = abs(c);
      if (k == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += "pi^" + std::to_string(2 * k);
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const PiPoly& p) { return os << p.to_string(); }

  /// Numeric value with Pi replaced by pi^2 at 50 significant digits.
  HighPrecision evaluate() const {
    const HighPrecision pi2 = boost::math::constants::pi<HighPrecision>() * boost::math::constants::pi<HighPrecision>();
    HighPrecision acc = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * pi2 + to_high_precision(coeffs_[k]);
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace kreimer
