#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "kreimer/errors.hpp"

namespace kreimer {

using Rational = mpq_class;

/// Parses "[-]p" or "[-]p/q" (decimal digits only) into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return ParseError("malformed rational '" + std::string(text) + "'"); };
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  auto digits = [&](std::size_t& pos) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos > start;
  };
  if (!digits(i)) throw fail();
  if (i < text.size()) {
    if (text[i] != '/') throw fail();
    ++i;
    if (!digits(i) || i != text.size()) throw fail();
  }
  std::string normalized(text.front() == '+' ? text.substr(1) : text);
  Rational r;
  if (r.set_str(normalized, 10) != 0) throw fail();
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

/// "p" or "p/q" in lowest terms.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace kreimer
