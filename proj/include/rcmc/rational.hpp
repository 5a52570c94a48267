#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace rcmc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// base^e with the convention 0^0 = 1; e must be >= 0.
Rational rational_pow(const Rational& base, long e);

// 2^e for any integer e (negative gives 1/2^|e|).
Rational pow2(long e);

// binomial coefficient C(n, 2) with C(0,2) = C(1,2) = 0.
inline BigInt choose2(long n) { return n < 2 ? BigInt(0) : BigInt(n) * (n - 1) / 2; }

// Serialized as "num/den" with the denominator always explicit, so exact
// values survive a round trip through reports.
std::string to_fraction(const Rational& q);

// Accepts "3/4", integers ("2"), and finite decimals ("0.25"), all exact.
Rational parse_rational(const std::string& s);

double to_double(const Rational& q);

// Bit length of the larger of |numerator|, denominator.  Used for the
// exact-arithmetic size ceiling in matrix powering.
long bit_size(const Rational& q);

} // namespace rcmc
