#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace overlap {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always normalized: positive denominator,
// gcd(num, den) == 1. All published decimal values are held in this type;
// binary floats are derived shadows, never the source of truth.
using Rational = boost::multiprecision::cpp_rational;

// Malformed decimal input. `position` is the 0-based index of the
// offending character (or of the end of input when a digit was expected).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Parses "[+-]digits[.digits]" into an exact rational. A string with d
// fractional digits becomes integer/10^d before normalization.
Rational parse_decimal(std::string_view s);

// 10^e (e may be negative).
Rational pow10(int e);

// Fixed-point rendering with `digits` fractional digits, ties to even.
// trim_zeros drops trailing fractional zeros (and a bare trailing '.').
std::string decimal_string(const Rational& r, int digits, bool trim_zeros = false);

// True iff r has a finite decimal expansion (denominator = 2^a * 5^b).
bool has_terminating_decimal(const Rational& r);

// Exact decimal rendering; throws std::domain_error when no finite
// expansion exists. parse_decimal(exact_decimal_string(r)) == r.
std::string exact_decimal_string(const Rational& r);

// "num/den" in lowest terms.
std::string fraction_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace overlap
