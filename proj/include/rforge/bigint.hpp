#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace rforge {

// Exact integer type for coefficients and evaluations. The deduction
// chains form things like d*e^3*x whose values explode well past 64 bits.
// Expression templates are off: arithmetic evaluates eagerly, so `auto` and
// std::make_pair never capture deferred references to mutating operands.
using BigInt =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;

}  // namespace rforge
