#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace regraph {

/// Arbitrary-precision nonnegative count; exact arithmetic throughout the
/// enumeration oracles (the quantities involved are of order (dn)!).
using BigCount = boost::multiprecision::cpp_int;

/// Exact rational, used wherever probabilities must sum to 1 exactly.
using Rational = boost::multiprecision::cpp_rational;

BigCount factorial_big(unsigned n);
BigCount double_factorial_big(unsigned n);  // n!! (n odd in our uses)
BigCount binomial_big(unsigned n, unsigned k);

/// (n-1)!! = number of perfect matchings of K_n for even n.
BigCount perfect_matching_count_complete(unsigned n);

}  // namespace regraph
