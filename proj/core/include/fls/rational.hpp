#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fls {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Parses "p", "-p" or "p/q" (q != 0). Throws Error{schema} on malformed input.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Rank of a dense rational matrix by fraction-exact Gaussian elimination.
int exact_rank(RationalMatrix rows);

}  // namespace fls
