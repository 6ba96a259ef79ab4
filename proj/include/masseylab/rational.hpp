#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace masseylab {

// Exact arbitrary-precision scalars. cpp_rational keeps values reduced with a
// positive denominator, which is the canonical form assumed everywhere below.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string rational_to_string(const Rational& r);

// Accepts "p" or "p/q" with optional leading '-', q > 0. Anything else
// (floats, empty strings, zero denominators) yields nullopt.
std::optional<Rational> rational_from_string(const std::string& s);

} // namespace masseylab
