#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ringcert {

// gmpxx keeps mpq_class canonical after every arithmetic operation; the only
// way to obtain a non-canonical value is direct construction from a string,
// which parse_rational guards.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "num" or "num/den" (optional leading '-'). Throws ParseError on
/// malformed input or a zero denominator. The result is in lowest terms.
Rational parse_rational(std::string_view text);

/// "num/den", or "num" when the denominator is 1.
std::string format_rational(const Rational& q);

}  // namespace ringcert
