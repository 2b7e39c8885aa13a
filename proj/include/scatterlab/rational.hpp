#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace scatterlab {

using Rational = boost::multiprecision::cpp_rational;

// "p/q" in lowest terms, or "p" for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& text) { return Rational(text); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// 2^{-k} as an exact rational.
inline Rational inverse_power_of_two(unsigned k) {
  boost::multiprecision::cpp_int denom = 1;
  denom <<= k;
  return Rational(boost::multiprecision::cpp_int(1), denom);
}

}  // namespace scatterlab
