#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qmap {

using Integer = mpz_class;
using Rational = mpq_class;

using QVec = std::vector<Rational>;
using IntVec = std::vector<long>;
using IntMat = std::vector<IntVec>;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Rational make_rational(long num, long den = 1);

/// Parses "p", "-p" or "p/q" (whitespace tolerated around the slash).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& q);

Integer floor(const Rational& q);
/// Fractional part in [0, 1).
Rational frac(const Rational& q);
bool is_integer(const Rational& q);

/// Least common multiple of the denominators (1 for an empty vector).
Integer lcm_denominators(const QVec& v);

/// Sum of v[i] * xi[i] over the first `len` entries.
Rational pairing(const QVec& v, const IntVec& xi, std::size_t len);

QVec to_qvec(const IntVec& v);

}  // namespace qmap
