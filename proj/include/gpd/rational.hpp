#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gpd {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "7", "-3/4", "0.125", "-2.5e-1". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" rendering (lowest terms, positive denominator).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Sorted, duplicate-free copy.
std::vector<Rational> sorted_unique(std::vector<Rational> values);

/// Number of entries of the sorted vector that are <= value.
std::size_t count_at_most(const std::vector<Rational>& sorted, const Rational& value);

/// Prime factorization by trial division: (prime, exponent) pairs, ascending.
/// The argument must be positive.
std::vector<std::pair<Integer, unsigned>> factorize(Integer n);

bool is_prime(const Integer& n);

}  // namespace gpd
