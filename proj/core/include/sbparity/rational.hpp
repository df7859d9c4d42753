#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sbparity {

/// Arbitrary-precision exact rational number.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

}  // namespace sbparity
