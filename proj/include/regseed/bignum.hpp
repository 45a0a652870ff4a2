#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace regseed {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRat& x) { return boost::multiprecision::numerator(x); }
inline BigInt rat_den(const BigRat& x) { return boost::multiprecision::denominator(x); }

inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

BigInt ceil_rat(const BigRat& x);
BigInt floor_rat(const BigRat& x);

// Number of bits of |x|; bit_length(0) == 0.
std::size_t bit_length(const BigInt& x);

// floor(log2 x) for x > 0, exact.
BigInt floor_log2(const BigRat& x);

// Parses "3/5", "12", "0.25", "1e-3"-free plain decimals into an exact rational.
BigRat parse_rational(const std::string& text);

// Exact rational enclosure [lo, hi] of sqrt(x) for x >= 0 with
// hi - lo <= sqrt(x) / 2^bits (hi == lo iff x is a perfect rational square).
void sqrt_interval(const BigRat& x, unsigned bits, BigRat& lo, BigRat& hi);

// If x is a square of a rational, returns true and sets root.
bool exact_sqrt(const BigRat& x, BigRat& root);

// Decimal rendering of an exact rational with the given number of fractional
// digits, truncated toward zero; used for report output of exact quantities.
std::string rational_decimal(const BigRat& x, int frac_digits);

}  // namespace regseed
