#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace toric {

/// Exact rational arithmetic. All values are kept canonical (reduced,
/// positive denominator); gmp keeps arithmetic results canonical as long as
/// the operands are, so construction goes through the helpers below.
using Rational = mpq_class;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

Rational make_rational(long num, long den = 1);

/// gmpxx has no long long constructor; lattice normals are stored as
/// long long, so conversions go through here.
inline Rational rational_of(long long v) { return Rational(static_cast<long>(v)); }

/// Parses "p/q" or "p" (decimal-free). Throws InputError on anything else,
/// including zero denominators.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is 1); round-trips through
/// parse_rational.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Exact: every finite double is a rational with a power-of-two denominator.
Rational rational_from_double(double x);

Rational rat_pow(const Rational& base, unsigned exponent);

Rational factorial(unsigned n);

/// gcd of absolute values, 0 for the all-zero vector.
long long vector_gcd(const std::vector<long long>& v);

}  // namespace toric
