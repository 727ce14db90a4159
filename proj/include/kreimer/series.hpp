#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kreimer/coefficient.hpp"
#include "kreimer/errors.hpp"
#include "kreimer/forest.hpp"
#include "kreimer/pipoly.hpp"
#include "kreimer/rational.hpp"

namespace kreimer {

/// Exponent vector of a monomial, one byte per variable.
class Exponent {
 public:
  static constexpr unsigned max_exponent = 255;

  Exponent() = default;
  explicit Exponent(std::size_t variables) : bytes_(variables, '\0') {}

  std::size_t size() const { return bytes_.size(); }
  unsigned operator[](std::size_t i) const { return static_cast<unsigned char>(bytes_[i]); }

  void set(std::size_t i, unsigned e) {
    if (e > max_exponent) throw IndexOutOfRange("exponent " + std::to_string(e) + " exceeds the supported maximum");
    bytes_[i] = static_cast<char>(static_cast<unsigned char>(e));
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (char c : bytes_) d += static_cast<unsigned char>(c);
    return d;
  }

  // std::string compares through char_traits<char>, i.e. as unsigned bytes.
  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend bool operator<(const Exponent& a, const Exponent& b) { return a.bytes_ < b.bytes_; }

 private:
  std::string bytes_;
};

/// Rational linear combination of series variables.
using VariableCombination = std::map<VertexId, Rational>;
/// Simultaneous substitution z_w <- image(w); unlisted variables stay fixed.
using Substitution = std::map<VertexId, VariableCombination>;

namespace detail {

// Packed monomial z^e Pi^k: bytes [0, 15) hold e, the last byte holds k.
// Byte-wise order agrees with the order of Exponent, so shifting one
// coordinate of every key keeps a sorted term list sorted.
struct Monomial {
  static constexpr std::size_t max_variables = 15;
  static constexpr std::size_t pi_slot = 15;

  std::array<std::uint8_t, 16> bytes{};

  unsigned degree(std::size_t n) const {
    unsigned d = 0;
    for (std::size_t i = 0; i < n; ++i) d += bytes[i];
    return d;
  }
  unsigned pi_power() const { return bytes[pi_slot]; }
  bool same_exponent(const Monomial& o) const {
    return std::equal(bytes.begin(), bytes.begin() + pi_slot, o.bytes.begin());
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct Term {
  Monomial m;
  Coefficient c;
  friend bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }
};

inline std::uint8_t checked_byte(unsigned e) {
  if (e > Exponent::max_exponent)
    throw IndexOutOfRange("exponent " + std::to_string(e) + " exceeds the supported maximum");
  return static_cast<std::uint8_t>(e);
}

/// Sorts, merges equal monomials and drops zero coefficients.
inline void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].m == terms[i].m) terms[i].c += terms[j++].c;
    if (!terms[i].c.is_zero()) {
      if (out != i) terms[out] = std::move(terms[i]);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

inline std::vector<Rational> binomial_row(unsigned k) {
  std::vector<Rational> row(k + 1);
  row[0] = 1;
  for (unsigned j = 1; j <= k; ++j) row[j] = row[j - 1] * (k - j + 1) / j;
  return row;
}

}  // namespace detail

/// Multivariate power series over Q[Pi], exact up to total degree `truncation`.
/// At most 15 variables.
class TruncSeries {
 public:
  using Terms = std::map<Exponent, PiPoly>;

  TruncSeries() = default;
  TruncSeries(std::vector<VertexId> variables, unsigned truncation)
      : vars_(std::move(variables)), truncation_(truncation) {
    if (vars_.size() > detail::Monomial::max_variables)
      throw IndexOutOfRange("series support at most " + std::to_string(detail::Monomial::max_variables) +
                            " variables, got " + std::to_string(vars_.size()));
    if (truncation_ > Exponent::max_exponent)
      throw IndexOutOfRange("truncation " + std::to_string(truncation_) + " exceeds the supported maximum");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw VariableMismatch("duplicate series variable " + vars_[i].to_string());
  }

  static TruncSeries constant(std::vector<VertexId> variables, unsigned truncation, const PiPoly& c) {
    TruncSeries s(std::move(variables), truncation);
    s.add_term(Exponent(s.vars_.size()), c);
    return s;
  }

  static TruncSeries variable(std::vector<VertexId> variables, unsigned truncation, VertexId v,
                              const PiPoly& c = PiPoly(1)) {
    TruncSeries s(std::move(variables), truncation);
    Exponent e(s.vars_.size());
    e.set(s.position(v), 1);
    s.add_term(e, c);
    return s;
  }

  const std::vector<VertexId>& variables() const { return vars_; }
  unsigned truncation() const { return truncation_; }
  bool is_zero() const { return terms_.empty(); }

  /// Monomials with their Q[Pi] coefficients.
  Terms terms() const {
    Terms out;
    for (const auto& t : terms_) out[exponent_of(t.m)] += PiPoly::monomial(t.c.to_rational(), t.m.pi_power());
    return out;
  }

  /// Number of monomials with a nonzero coefficient.
  std::size_t size() const {
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (i == 0 || !terms_[i].m.same_exponent(terms_[i - 1].m)) ++out;
    return out;
  }

  std::size_t position(VertexId v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) throw VariableMismatch("variable " + v.to_string() + " is not in the series");
    return static_cast<std::size_t>(it - vars_.begin());
  }

  PiPoly coefficient(const Exponent& e) const {
    if (e.size() != vars_.size()) throw VariableMismatch("exponent length does not match the variable list");
    const detail::Monomial lo = monomial_of(e, 0);
    PiPoly out;
    for (auto it = std::lower_bound(terms_.begin(), terms_.end(), lo, by_monomial);
         it != terms_.end() && it->m.same_exponent(lo); ++it)
      out += PiPoly::monomial(it->c.to_rational(), it->m.pi_power());
    return out;
  }

  /// Adds c * z^e; terms above the truncation degree are dropped.
  void add_term(const Exponent& e, const PiPoly& c) {
    if (e.size() != vars_.size()) throw VariableMismatch("exponent length does not match the variable list");
    if (c.is_zero() || e.total_degree() > truncation_) return;
    const auto& coeffs = c.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      const detail::Monomial m = monomial_of(e, k);
      auto it = std::lower_bound(terms_.begin(), terms_.end(), m, by_monomial);
      if (it != terms_.end() && it->m == m) {
        it->c += detail::Coefficient(coeffs[k]);
        if (it->c.is_zero()) terms_.erase(it);
      } else {
        terms_.insert(it, detail::Term{m, detail::Coefficient(coeffs[k])});
      }
    }
  }

  /// Drops every term above degree n (n must not exceed the current truncation).
  TruncSeries truncated(unsigned n) const {
    TruncSeries out(vars_, std::min(n, truncation_));
    for (const auto& t : terms_)
      if (t.m.degree(vars_.size()) <= out.truncation_) out.terms_.push_back(t);
    return out;
  }

  /// Same series viewed over a larger ordered variable list.
  TruncSeries embedded(const std::vector<VertexId>& variables) const {
    TruncSeries out(variables, truncation_);
    std::vector<std::size_t> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = out.position(vars_[i]);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      detail::Term nt{{}, t.c};
      for (std::size_t i = 0; i < vars_.size(); ++i) nt.m.bytes[map[i]] = t.m.bytes[i];
      nt.m.bytes[detail::Monomial::pi_slot] = t.m.bytes[detail::Monomial::pi_slot];
      out.terms_.push_back(std::move(nt));
    }
    detail::canonicalize(out.terms_);
    return out;
  }

  TruncSeries& operator+=(const TruncSeries& o) { return accumulate(o, false); }
  TruncSeries& operator-=(const TruncSeries& o) { return accumulate(o, true); }

  TruncSeries& operator*=(const PiPoly& s) {
    const auto& coeffs = s.coefficients();
    if (coeffs.size() <= 1) return *this *= s[0];
    std::vector<detail::Term> out;
    for (const auto& t : terms_)
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        detail::Term nt{t.m, t.c * detail::Coefficient(coeffs[k])};
        nt.m.bytes[detail::Monomial::pi_slot] = detail::checked_byte(t.m.pi_power() + static_cast<unsigned>(k));
        out.push_back(std::move(nt));
      }
    detail::canonicalize(out);
    terms_ = std::move(out);
    return *this;
  }
  TruncSeries& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      const detail::Coefficient f(s);
      for (auto& t : terms_) t.c *= f;
    }
    return *this;
  }

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const PiPoly& s) { return a *= s; }
  friend TruncSeries operator*(const PiPoly& s, TruncSeries a) { return a *= s; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.require_same_variables(b);
    TruncSeries out(a.vars_, std::min(a.truncation_, b.truncation_));
    const std::size_t n = a.vars_.size();
    std::vector<unsigned> db;
    for (const auto& t : b.terms_) db.push_back(t.m.degree(n));
    for (const auto& ta : a.terms_) {
      const unsigned da = ta.m.degree(n);
      if (da > out.truncation_) continue;
      for (std::size_t j = 0; j < b.terms_.size(); ++j) {
        if (da + db[j] > out.truncation_) continue;
        const auto& tb = b.terms_[j];
        detail::Term t{{}, ta.c * tb.c};
        for (std::size_t i = 0; i < n; ++i) t.m.bytes[i] = static_cast<std::uint8_t>(ta.m.bytes[i] + tb.m.bytes[i]);
        t.m.bytes[detail::Monomial::pi_slot] = detail::checked_byte(ta.m.pi_power() + tb.m.pi_power());
        out.terms_.push_back(std::move(t));
      }
    }
    detail::canonicalize(out.terms_);
    return out;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.vars_ == b.vars_ && a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
  }

  /// e.g. "1 + (pi^2/6)*v0^2 + O(5)"; terms ordered by degree.
  std::string to_string() const {
    const Terms all = terms();
    std::vector<std::pair<unsigned, const Exponent*>> order;
    for (const auto& [e, c] : all) order.emplace_back(e.total_degree(), &e);
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::string out;
    for (const auto& [deg, e] : order) {
      if (!out.empty()) out += " + ";
      const PiPoly& c = all.at(*e);
      std::string mono;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if ((*e)[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i].to_string();
        if ((*e)[i] > 1) mono += "^" + std::to_string((*e)[i]);
      }
      if (mono.empty()) {
        out += c.to_string();
      } else {
        out += "(" + c.to_string() + ")*" + mono;
      }
    }
    if (out.empty()) out = "0";
    return out + " + O(" + std::to_string(truncation_ + 1) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const TruncSeries& s) { return os << s.to_string(); }

 private:
  friend PiPoly eval0(const TruncSeries&);
  friend TruncSeries mul_by_var(const TruncSeries&, VertexId);
  friend TruncSeries div_by_var(TruncSeries, VertexId);
  friend TruncSeries shear_part(const TruncSeries&, VertexId, const std::vector<std::pair<VertexId, Rational>>&,
                                unsigned);
  friend TruncSeries set_zero(const TruncSeries&, VertexId);
  friend std::pair<TruncSeries, TruncSeries> split_by_var(TruncSeries, VertexId);
  friend TruncSeries drop_degrees_below(TruncSeries, unsigned);

  static bool by_monomial(const detail::Term& t, const detail::Monomial& m) { return t.m < m; }

  detail::Monomial monomial_of(const Exponent& e, std::size_t pi_power) const {
    detail::Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m.bytes[i] = static_cast<std::uint8_t>(e[i]);
    m.bytes[detail::Monomial::pi_slot] = detail::checked_byte(static_cast<unsigned>(pi_power));
    return m;
  }

  Exponent exponent_of(const detail::Monomial& m) const {
    Exponent e(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) e.set(i, m.bytes[i]);
    return e;
  }

  void require_same_variables(const TruncSeries& o) const {
    if (vars_ != o.vars_) throw VariableMismatch("series are over different variable lists");
  }

  // Linear merge of two sorted term lists.
  TruncSeries& accumulate(const TruncSeries& o, bool negate) {
    require_same_variables(o);
    if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
    const std::size_t n = vars_.size();
    std::vector<detail::Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->m < b->m)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->m < a->m) {
        if (b->m.degree(n) <= truncation_) out.push_back(detail::Term{b->m, negate ? -b->c : b->c});
        ++b;
      } else {
        if (negate) {
          a->c -= b->c;
        } else {
          a->c += b->c;
        }
        if (!a->c.is_zero()) out.push_back(std::move(*a));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  std::vector<VertexId> vars_;
  unsigned truncation_ = 0;
  std::vector<detail::Term> terms_;  // sorted by monomial, no zero coefficients
};

/// Constant term.
inline PiPoly eval0(const TruncSeries& s) {
  PiPoly out;
  const std::size_t n = s.vars_.size();
  // Constant monomials sort first.
  for (const auto& t : s.terms_) {
    if (t.m.degree(n) != 0) break;
    out += PiPoly::monomial(t.c.to_rational(), t.m.pi_power());
  }
  return out;
}

/// z_v * s, exact to one degree more than s.
inline TruncSeries mul_by_var(const TruncSeries& s, VertexId v) {
  const std::size_t p = s.position(v);
  TruncSeries out(s.vars_, s.truncation_ + 1);
  out.terms_ = s.terms_;
  for (auto& t : out.terms_) t.m.bytes[p] = detail::checked_byte(t.m.bytes[p] + 1u);
  return out;
}

/// Exact quotient s / z_v, known to one degree less than s.
/// Throws NotDivisible when some term has no factor z_v.
inline TruncSeries div_by_var(TruncSeries s, VertexId v) {
  const std::size_t p = s.position(v);
  if (s.truncation_ == 0) throw NotDivisible("cannot divide a degree-0 truncation by " + v.to_string());
  for (auto& t : s.terms_) {
    if (t.m.bytes[p] == 0) throw NotDivisible("a term of the series is not divisible by " + v.to_string());
    --t.m.bytes[p];
  }
  --s.truncation_;
  return s;
}

namespace detail {

// Terms of z^e(z_t -> z_t + c_t z_source for listed t) with total shift at
// least min_moved; the j = 0 term is z^e itself.
template <class Emit>
void shear_terms(const std::vector<Term>& terms, std::size_t source,
                 const std::vector<std::pair<std::size_t, Rational>>& targets, unsigned max_degree,
                 unsigned min_moved, Emit&& emit) {
  // table[i][e][j] = C(e, j) c_i^j
  std::vector<std::vector<std::vector<Coefficient>>> table(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::vector<Rational> powers{1};
    for (unsigned j = 1; j <= max_degree; ++j) powers.push_back(powers.back() * targets[i].second);
    for (unsigned e = 0; e <= max_degree; ++e) {
      std::vector<Coefficient> row;
      const auto binomials = binomial_row(e);
      for (unsigned j = 0; j <= e; ++j) row.emplace_back(Rational(binomials[j] * powers[j]));
      table[i].push_back(std::move(row));
    }
  }
  std::vector<unsigned> j(targets.size());
  for (const auto& t : terms) {
    std::fill(j.begin(), j.end(), 0u);
    while (true) {
      unsigned moved = 0;
      for (unsigned x : j) moved += x;
      if (moved >= min_moved) {
        Term nt{t.m, t.c};
        for (std::size_t i = 0; i < targets.size(); ++i) {
          if (j[i] == 0) continue;
          const std::size_t pos = targets[i].first;
          const unsigned e = t.m.bytes[pos];
          nt.c *= table[i][e][j[i]];
          nt.m.bytes[pos] = static_cast<std::uint8_t>(e - j[i]);
        }
        nt.m.bytes[source] = checked_byte(t.m.bytes[source] + moved);
        emit(std::move(nt));
      }
      std::size_t i = 0;
      while (i < targets.size() && j[i] == t.m.bytes[targets[i].first]) j[i++] = 0;
      if (i == targets.size()) break;
      ++j[i];
    }
  }
}

}  // namespace detail

/// The part of shear(s, source, targets) made of terms whose z_source power
/// grew by at least min_shift. With min_shift = 1 and s free of z_source this
/// is shear(s, ...) - s.
inline TruncSeries shear_part(const TruncSeries& s, VertexId source,
                              const std::vector<std::pair<VertexId, Rational>>& targets, unsigned min_shift) {
  const std::size_t u = s.position(source);
  std::vector<std::pair<std::size_t, Rational>> slots;
  for (const auto& [t, c] : targets) {
    const std::size_t pos = s.position(t);
    if (pos == u) throw VariableMismatch("shear needs two distinct variables");
    if (c != 0) slots.emplace_back(pos, c);
  }
  TruncSeries out(s.vars_, s.truncation_);
  if (slots.empty()) {
    if (min_shift == 0) out.terms_ = s.terms_;
    return out;
  }
  std::size_t count = 0;
  for (const auto& t : s.terms_) {
    std::size_t c = 1;
    for (const auto& sl : slots) c *= t.m.bytes[sl.first] + 1u;
    count += c;
  }
  out.terms_.reserve(count);
  detail::shear_terms(s.terms_, u, slots, s.truncation_, min_shift,
                      [&](detail::Term&& t) { out.terms_.push_back(std::move(t)); });
  detail::canonicalize(out.terms_);
  return out;
}

/// Simultaneous substitution z_t <- z_t + c_t * z_source over the listed
/// targets, none of which may be the source.
inline TruncSeries shear(const TruncSeries& s, VertexId source,
                         const std::vector<std::pair<VertexId, Rational>>& targets) {
  return shear_part(s, source, targets, 0);
}

/// Elementary substitution z_target <- z_target + c * z_source.
inline TruncSeries shear(const TruncSeries& s, VertexId target, VertexId source, const Rational& c) {
  return shear(s, source, {{target, c}});
}

/// s with z_v set to 0.
inline TruncSeries set_zero(const TruncSeries& s, VertexId v) {
  const std::size_t p = s.position(v);
  TruncSeries out(s.vars_, s.truncation_);
  for (const auto& t : s.terms_)
    if (t.m.bytes[p] == 0) out.terms_.push_back(t);
  return out;
}

/// (terms divisible by z_v, terms free of z_v).
inline std::pair<TruncSeries, TruncSeries> split_by_var(TruncSeries s, VertexId v) {
  const std::size_t p = s.position(v);
  TruncSeries with(s.vars_, s.truncation_), without(s.vars_, s.truncation_);
  for (auto& t : s.terms_) (t.m.bytes[p] == 0 ? without : with).terms_.push_back(std::move(t));
  return {std::move(with), std::move(without)};
}

/// s without its homogeneous parts of degree below d.
inline TruncSeries drop_degrees_below(TruncSeries s, unsigned d) {
  const std::size_t n = s.vars_.size();
  std::erase_if(s.terms_, [&](const detail::Term& t) { return t.m.degree(n) < d; });
  return s;
}

/// Simultaneous linear substitution, exact at the input truncation.
/// Images must only use the series' own variables.
inline TruncSeries subst_linear(const TruncSeries& s, const Substitution& assignment) {
  const auto& vars = s.variables();
  const std::size_t n = vars.size();
  const unsigned N = s.truncation();

  // Image of every variable as a homogeneous linear series; identity when unlisted.
  std::vector<TruncSeries> image(n);
  std::vector<bool> is_identity(n, true);
  for (std::size_t i = 0; i < n; ++i) image[i] = TruncSeries::variable(vars, N, vars[i]);
  for (const auto& [w, combo] : assignment) {
    const std::size_t i = s.position(w);
    TruncSeries img(vars, N);
    for (const auto& [src, coeff] : combo) {
      Exponent e(n);
      e.set(s.position(src), 1);
      img.add_term(e, PiPoly(coeff));
    }
    is_identity[i] = img == image[i];
    image[i] = std::move(img);
  }

  std::vector<std::vector<TruncSeries>> powers(n);
  auto power = [&](std::size_t i, unsigned k) -> const TruncSeries& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(TruncSeries::constant(vars, N, PiPoly(1)));
    while (p.size() <= k) p.push_back(p.back() * image[i]);
    return p[k];
  };

  TruncSeries out(vars, N);
  for (const auto& [e, c] : s.terms()) {
    Exponent fixed(n);
    for (std::size_t i = 0; i < n; ++i)
      if (is_identity[i]) fixed.set(i, e[i]);
    TruncSeries acc(vars, N);
    acc.add_term(fixed, c);
    for (std::size_t i = 0; i < n && !acc.is_zero(); ++i)
      if (!is_identity[i] && e[i] > 0) acc = acc * power(i, e[i]);
    out += acc;
  }
  return out;
}

/// Taylor expansion of h(x) = pi/sin(pi x) - 1/x in the single variable v,
/// to degree n, obtained by inverting sin(pi x)/(pi x) = sum_k (-Pi)^k x^{2k} / (2k+1)!.
inline TruncSeries h_series(VertexId v, unsigned n) {
  // Coefficients in x of s(x) = sin(pi x)/(pi x) up to degree n + 1.
  const unsigned top = n + 1;
  std::vector<PiPoly> sinc(top + 1);
  Rational fact = 1;  // (2k+1)!
  for (unsigned k = 0; 2 * k <= top; ++k) {
    if (k > 0) fact *= Rational((2 * k) * (2 * k + 1));
    sinc[2 * k] = PiPoly::monomial(Rational(k % 2 == 0 ? 1 : -1) / fact, k);
  }
  // inv = 1/s via inv_m = -sum_{j=1..m} s_j inv_{m-j}.
  std::vector<PiPoly> inv(top + 1);
  inv[0] = PiPoly(1);
  for (unsigned m = 1; m <= top; ++m) {
    PiPoly acc;
    for (unsigned j = 1; j <= m; ++j)
      if (!sinc[j].is_zero()) acc -= sinc[j] * inv[m - j];
    inv[m] = acc;
  }
  // h(x) = (inv(x) - 1) / x.
  TruncSeries out({v}, n);
  for (unsigned d = 0; d <= n; ++d) {
    Exponent e(1);
    e.set(0, d);
    out.add_term(e, inv[d + 1]);
  }
  return out;
}

}  // namespace kreimer
