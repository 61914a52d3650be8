#pragma once

#include <string_view>

#include "hbspace/poly.hpp"

namespace hbspace {

/// Rational-function literal in z: sums, products, quotients and nonnegative
/// integer powers of complex literals and z. Literals take an `i` suffix for the
/// imaginary part ("0.5i", bare "i"); juxtaposition multiplies ("2z", "z(1+z)");
/// whitespace is ignored. Throws kParse naming the offending token.
RationalFn parse_rational(std::string_view text, const Tolerances& tol = {});

}  // namespace hbspace
