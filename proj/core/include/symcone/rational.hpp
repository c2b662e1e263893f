#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace symcone {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

/// Parses "p", "-p" or "p/q" exactly. Throws std::invalid_argument on malformed
/// tokens or a zero denominator.
Rational parse_rational(std::string_view token);

std::string to_string(const Rational& value);

Rational dot(const RationalVector& a, const RationalVector& b);

/// Smallest positive multiple of `v` with coprime integer entries. The zero
/// vector maps to itself. Orientation is preserved.
RationalVector primitive_scaling(const RationalVector& v);

IntegerVector primitive_integer(const RationalVector& v);

RationalVector to_rational(const IntegerVector& v);

/// -1, 0 or +1.
int sign(const Rational& value);

bool is_zero(const RationalVector& v);

/// Lexicographic comparison of equal-length vectors.
bool lex_less(const RationalVector& a, const RationalVector& b);

}  // namespace symcone
