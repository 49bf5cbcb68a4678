#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liesym {

/// Arbitrary precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a", "a/b". Returns nullopt on malformed input or zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// "num/den" with the denominator always present.
std::string to_fraction_string(const Rational& q);

/// Shortest form: "3", "-5/2".
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

/// Exact k-th root of a non-negative rational, if it exists.
std::optional<Rational> exact_root(const Rational& q, unsigned long k);

Integer lcm_of_denominators(const std::vector<Rational>& values);

}  // namespace liesym
