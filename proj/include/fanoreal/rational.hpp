#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fanoreal {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", an integer, or a decimal with optional exponent
/// ("-1.25e-3") into an exact rational. Throws InvalidInput.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is one).
std::string to_string(const Rational& q);

/// Largest double <= q and smallest double >= q.
double round_down(const Rational& q);
double round_up(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace fanoreal
