#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <utility>

#include "kreimer/rational.hpp"

namespace kreimer::detail {

/// Exact rational kept as a reduced int64 fraction while it fits, promoted to
/// GMP otherwise. Series coefficients are mostly small, and this avoids a heap
/// allocation and a bignum gcd per operation.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(std::int64_t n) : num_(n) {}  // NOLINT: integers are coefficients
  explicit Coefficient(const Rational& r) { assign(r); }

  Coefficient(const Coefficient& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<Rational>(*o.big_);
  }
  Coefficient(Coefficient&&) noexcept = default;
  Coefficient& operator=(const Coefficient& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<Rational>(*o.big_) : nullptr;
    }
    return *this;
  }
  Coefficient& operator=(Coefficient&&) noexcept = default;

  bool is_zero() const { return big_ ? sgn(*big_) == 0 : num_ == 0; }

  Rational to_rational() const {
    if (big_) return *big_;
    Rational r(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return r;
  }

  Coefficient operator-() const {
    if (big_) return Coefficient(Rational(-*big_));
    Coefficient out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
  }

  Coefficient& operator+=(const Coefficient& o) { return add(o, false); }
  Coefficient& operator-=(const Coefficient& o) { return add(o, true); }

  Coefficient& operator*=(const Coefficient& o) {
    if (!big_ && !o.big_) {
      if (num_ == 0 || o.num_ == 0) return *this = Coefficient();
      const std::uint64_t g1 = gcd(magnitude(num_), static_cast<std::uint64_t>(o.den_));
      const std::uint64_t g2 = gcd(magnitude(o.num_), static_cast<std::uint64_t>(den_));
      const __int128 n = static_cast<__int128>(num_ / static_cast<std::int64_t>(g1)) *
                         (o.num_ / static_cast<std::int64_t>(g2));
      const __int128 d = static_cast<__int128>(den_ / static_cast<std::int64_t>(g2)) *
                         (o.den_ / static_cast<std::int64_t>(g1));
      if (set_small(n, d)) return *this;
    }
    return assign(to_rational() * o.to_rational());
  }

  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.to_rational() == b.to_rational();
  }

 private:
  static std::uint64_t magnitude(std::int64_t x) {
    return x < 0 ? static_cast<std::uint64_t>(-(x + 1)) + 1 : static_cast<std::uint64_t>(x);
  }

  static std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
      b >>= __builtin_ctzll(b);
      if (a > b) std::swap(a, b);
      b -= a;
    } while (b != 0);
    return a << shift;
  }

  // Stores n/d (d > 0, already reduced) if both fit; the numerator stays away
  // from INT64_MIN so negation is always safe.
  bool set_small(__int128 n, __int128 d) {
    constexpr __int128 limit = std::numeric_limits<std::int64_t>::max();
    if (n > limit || n < -limit || d > limit) return false;
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return true;
  }

  Coefficient& assign(const Rational& r) {
    const mpz_class& n = r.get_num();
    const mpz_class& d = r.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
      num_ = n.get_si();
      den_ = d.get_si();
      big_.reset();
    } else {
      big_ = std::make_unique<Rational>(r);
    }
    return *this;
  }

  Coefficient& add(const Coefficient& o, bool negate) {
    if (!big_ && !o.big_) {
      const __int128 c = negate ? -static_cast<__int128>(o.num_) : o.num_;
      if (den_ == o.den_) {
        // gcd(a + c, d) is all that can cancel.
        const __int128 n = num_ + c;
        if (n == 0) return *this = Coefficient();
        const std::uint64_t g = gcd(static_cast<std::uint64_t>((n < 0 ? -n : n) % den_), static_cast<std::uint64_t>(den_));
        if (set_small(n / g, den_ / static_cast<__int128>(g))) return *this;
      } else {
        const std::uint64_t g = gcd(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(o.den_));
        const std::int64_t b1 = den_ / static_cast<std::int64_t>(g);
        const std::int64_t d1 = o.den_ / static_cast<std::int64_t>(g);
        const __int128 n = static_cast<__int128>(num_) * d1 + c * b1;
        if (n == 0) return *this = Coefficient();
        // Only gcd(n, g) can cancel against b1 * d1 * g.
        const std::uint64_t g2 = gcd(static_cast<std::uint64_t>((n < 0 ? -n : n) % g), g);
        const __int128 d = static_cast<__int128>(b1) * o.den_;
        if (set_small(n / g2, d / g2)) return *this;
      }
    }
    const Rational rhs = o.to_rational();
    return assign(negate ? Rational(to_rational() - rhs) : Rational(to_rational() + rhs));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<Rational> big_;
};

}  // namespace kreimer::detail
