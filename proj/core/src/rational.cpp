#include "gcalc/rational.hpp"

#include <cctype>
#include <cstdio>
#include <string>

#include "gcalc/errors.hpp"

namespace gcalc {
namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (!is_integer_literal(text)) {
    throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return BigInt(std::string(text), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view value = trim(text);
  const auto slash = value.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(value, text));
  }
  BigInt num = parse_integer(trim(value.substr(0, slash)), text);
  BigInt den = parse_integer(trim(value.substr(slash + 1)), text);
  if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  Rational result(num, den);
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const BigInt& value) { return value.get_str(10); }

double to_double(const Rational& value) { return value.get_d(); }

std::string format_exact(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", to_double(value));
  return to_string(value) + " (" + buffer + ")";
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

BigInt pow(const BigInt& base, unsigned exponent) {
  BigInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

BigInt falling_factorial(long k, long m) {
  if (m < 0) throw InvalidArgument("falling factorial with negative length");
  BigInt result = 1;
  for (long i = 0; i < m; ++i) {
    if (k - i <= 0) return 0;
    result *= k - i;
  }
  return result;
}

BigInt factorial(long n) {
  BigInt result = 1;
  for (long i = 2; i <= n; ++i) result *= i;
  return result;
}

BigInt surjection_count(long m, long j) {
  if (m < 0 || j < 0) throw InvalidArgument("surjection count with negative size");
  if (j > m) return 0;
  if (j == 0) return m == 0 ? 1 : 0;
  // Inclusion-exclusion over the missed codomain elements.
  BigInt total = 0;
  BigInt binom = 1;
  for (long i = 0; i <= j; ++i) {
    BigInt term = binom * pow(BigInt(j - i), static_cast<unsigned>(m));
    if (i % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
    binom = binom * (j - i) / (i + 1);
  }
  return total;
}

}  // namespace gcalc
