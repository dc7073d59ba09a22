#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include "dagger/error.hpp"

namespace dagger {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

inline std::int64_t floor(const Rational& r) {
  return floor_div(r.numerator(), r.denominator());
}

inline std::int64_t ceil(const Rational& r) {
  return ceil_div(r.numerator(), r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "p/q", "p" or a plain integer literal.
inline Rational parse_rational(const std::string& text) {
  try {
    std::size_t used = 0;
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) throw InvalidInput("rational '" + text + "'");
      return Rational(n);
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    std::int64_t p = std::stoll(num, &used);
    if (used != num.size()) throw InvalidInput("rational '" + text + "'");
    std::int64_t q = std::stoll(den, &used);
    if (used != den.size() || q == 0) throw InvalidInput("rational '" + text + "'");
    return Rational(p, q);
  } catch (const std::logic_error&) {
    throw InvalidInput("rational '" + text + "'");
  }
}

}  // namespace dagger
