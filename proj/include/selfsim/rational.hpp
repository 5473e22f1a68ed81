#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace selfsim {

using Rational = mpq_class;
using Integer = mpz_class;

/// base^exp for non-negative exp.
Integer ipow(unsigned long base, unsigned long exp);

/// Formats as "p/q" with q >= 1, including integers ("1/1", "0/1").
std::string format_rational(const Rational &r);

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on junk or
/// a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace selfsim
