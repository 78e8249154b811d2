#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace impsel {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// Builds num/den in canonical form.
Rational make_rational(long num, long den);

/// Renders as "num/den"; integers keep the "/1" suffix so the format is uniform.
std::string to_string(const Rational& q);

/// Parses "num/den" or a bare integer.
Rational parse_rational(std::string_view text);

/// Fixed-point decimal rendering with `digits` places after the point (lossy).
std::string to_decimal(const Rational& q, int digits = 12);

double to_double(const Rational& q);

}  // namespace impsel
