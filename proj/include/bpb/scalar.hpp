#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace bpb {

// Exact rational scalar. All model/selection/equilibrium arithmetic runs on
// these; floating point is confined to learner accumulators.
using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "3", "-7", "4.4", "22/5". Decimals become exact rationals.
Scalar parse_scalar(const std::string& text);

// "22/5" when the denominator is nontrivial, "3" otherwise. parse_scalar
// round-trips this exactly.
std::string to_fraction_string(const Scalar& x);

double to_double(const Scalar& x);

}  // namespace bpb
