#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace catprob {

/// Exact arbitrary-precision rational scalar. Every quantity in the library
/// (weights, kernel entries, integrals, bounds) is one of these; there is no
/// floating-point mode anywhere.
using Rat = boost::multiprecision::cpp_rational;

/// Canonical text form: lowest terms, sign on the numerator, denominator
/// omitted when it is 1. Examples: "-1/3", "2", "0".
std::string format_rational(const Rat& value);

/// Parses the canonical text form back into a rational. Accepts an optional
/// leading '-', an integer numerator and an optional "/denominator" part.
/// Throws Error("ParseError") on anything else, including denominator zero.
Rat parse_rational(const std::string& text);

}  // namespace catprob
