#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace walkerlie {

/// Exact rational scalar used throughout the symbolic core.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Parses a decimal literal ("12", "3.25") into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational rational_from_decimal(const std::string& text);

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Parses "p", "p/q", decimal literals, with optional leading '-'.
Rational rational_from_string(const std::string& text);

std::string to_string(const Rational& q);

}  // namespace walkerlie
