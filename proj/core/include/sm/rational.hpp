#ifndef SM_RATIONAL_HPP
#define SM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace sm {

// Exact arithmetic everywhere: abscissae produced by the extension steps and
// the exponent tables of the pattern calculus are rationals whose integer
// parts can become very large, so all core comparisons go through GMP.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q" or "p" (decimal integers, optional sign). Throws
/// ParameterError on malformed input or zero denominator.
Rat parse_rat(const std::string& text);

/// Renders canonical "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& value);

/// Largest integer <= value.
Int floor_rat(const Rat& value);

/// Smallest integer >= value.
Int ceil_rat(const Rat& value);

/// value^e for a non-negative integer exponent.
Rat pow_rat(const Rat& value, unsigned long e);

/// Total bit length of numerator plus denominator; the resource guard for
/// iterated extensions is expressed in these units.
std::size_t rat_bits(const Rat& value);

/// Nearest rational with denominator 2^precision_bits; used to build
/// deterministic rational sample grids from floating-point seeds.
Rat rat_from_double(double value, unsigned precision_bits = 24);

double to_double(const Rat& value);

}  // namespace sm

#endif  // SM_RATIONAL_HPP
