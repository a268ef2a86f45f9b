#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace cyclex {

/// Exact arbitrary-precision rational: lowest terms, positive denominator.
/// All expectations and probabilities in this library are carried as
/// Rationals so that equalities can be tested exactly.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// num/den with proper sign normalization (the raw two-argument mpq
/// constructor misreads negative denominators). den must be nonzero.
Rational make_rational(long long num, long long den = 1);

/// Accepts "p/q", an optionally signed integer, or a decimal string such as
/// "-0.7071" (converted to the exact decimal fraction -7071/10000).
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical fraction rendering; the denominator is always printed ("1/1").
std::string fraction_string(const Rational& value);

/// Decimal rendering to `digits` significant digits for human readability.
std::string decimal_string(const Rational& value, int digits = 12);

}  // namespace cyclex
