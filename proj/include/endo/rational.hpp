#pragma once

// Exact rational scalars. Every coordinate, level and mark in the library is
// one of these; there is no floating point anywhere in the algebra.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace endo {

/// Arbitrary-precision integers and rationals, expression templates off so
/// `auto` always holds a value.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational rat(std::int64_t n, std::int64_t d = 1) { return Rational(Integer(n), Integer(d)); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

/// Largest integer <= q.
inline Integer floor_int(const Rational& q) {
  Integer n = num(q), d = den(q);  // d > 0
  Integer f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f;
}

/// Representative of q modulo 1 in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor_int(q)); }

/// True iff q lies in period*Z + offset.
inline bool in_coset(const Rational& q, const Rational& period, const Rational& offset) {
  return is_integer((q - offset) / period);
}

inline std::int64_t to_i64(const Integer& n) {
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<std::int64_t>(n);
}

/// "p/q" or "p" when q == 1.
inline std::string to_string(const Rational& q) {
  std::string s = num(q).str();
  if (den(q) != 1) s += "/" + den(q).str();
  return s;
}

inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view t) {
    if (t.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    for (std::size_t k = i; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    return Integer(std::string(t));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer d = parse_int(text.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), d);
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace endo
