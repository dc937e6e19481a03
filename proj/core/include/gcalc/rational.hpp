#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gcalc {

/// Arbitrary-precision integer.
using BigInt = mpz_class;
/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses "a", "-a" or "a/b" (b != 0). Whitespace around the value is ignored.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers are printed without a denominator.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Decimal approximation used for human-readable output.
double to_double(const Rational& value);

/// "num/den (decimal)" as printed by the CLI.
std::string format_exact(const Rational& value);

Rational abs(const Rational& value);

/// value^exponent for a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

/// k (k-1) ... (k-m+1); zero when m > k.
BigInt falling_factorial(long k, long m);

/// Number of surjections from an m-set onto a j-set.
BigInt surjection_count(long m, long j);

BigInt factorial(long n);

}  // namespace gcalc
