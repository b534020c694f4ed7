#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kcubic {

/// Exact rational number. GMP keeps results of arithmetic canonical
/// (reduced, positive denominator); values built from raw num/den pairs go
/// through make_rational.
using Scalar = mpq_class;

Scalar make_rational(long num, long den);

/// Parses "3", "-0.25", "1.5e-3" or "7/12" into an exact rational.
/// Decimal input is read as a finite base-10 expansion, never through a
/// binary float. Throws ParseError on malformed input or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Float view of a rational; within one ulp of the true value.
double to_double(const Scalar& q);

/// Exact rational value of a finite double.
Scalar from_double(double v);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& q);

inline int sign(const Scalar& q) { return sgn(q); }

Scalar pow(const Scalar& base, unsigned exponent);

} // namespace kcubic
