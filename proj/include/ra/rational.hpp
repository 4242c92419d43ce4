#ifndef RA_RATIONAL_HPP
#define RA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ra {

/// Exact arbitrary-precision rational; all data values and guard
/// coefficients use this type. No floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "7", "-7", "0.5", "-1.25", "1/2", "-3/4". Exact; throws
/// ParseError on anything else.
Rational parse_rational(const std::string& text);

/// Prints as "n" when the denominator is 1, otherwise "n/d".
/// parse_rational(to_string(x)) == x.
std::string to_string(const Rational& value);

} // namespace ra

#endif
