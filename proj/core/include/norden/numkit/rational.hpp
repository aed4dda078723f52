#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace norden {

using Rational = mpq_class;

// Parses "p", "p/q", or a terminating decimal such as "-0.25".
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);

// Square root of a perfect-square rational. Throws StructuralError otherwise.
Rational exact_sqrt(const Rational& q);

bool is_perfect_square(const Rational& q);

}  // namespace norden
