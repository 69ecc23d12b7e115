#ifndef SURDLAB_NUMERIC_HPP
#define SURDLAB_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace surdlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Exact integer square root, floor(sqrt(n)).  Throws NonPositiveInputError on n < 0.
Integer isqrt(const Integer& n);

// True iff n is a perfect square; optionally reports the root.
bool is_perfect_square(const Integer& n, Integer* root = nullptr);

// Floor division a/b rounding toward minus infinity (b != 0).
Integer floor_div(const Integer& a, const Integer& b);

// floor(r) and ceil(r) as integers.
Integer rational_floor(const Rational& r);
Integer rational_ceil(const Rational& r);

// Largest k/2^bits <= r, respectively smallest k/2^bits >= r.  Used to compress
// rational operands to a controlled bit size before series evaluation.
Rational dyadic_floor(const Rational& r, unsigned bits);
Rational dyadic_ceil(const Rational& r, unsigned bits);

// Fibonacci numbers, fib(0)=0, fib(1)=1.
Integer fibonacci(unsigned k);

// Write D = s^2 * d with d as square-free as a small-prime factor base (plus a
// final perfect-square of the cofactor) can make it.  Complete for every D whose
// non-square-free part factors over primes <= 10^5, which covers everything the
// lab constructs by integer scaling.
std::pair<Integer, Integer> square_free_split(const Integer& D);

// Number of decimal digits of |n| (0 has one digit).
int decimal_digits(const Integer& n);

// Parse "p/q", integer, or decimal/scientific literals ("1e-12", "0.390625")
// into an exact Rational.  Throws ParseError.
Rational rational_from_string(std::string_view text);

// Decimal rendering of r with `digits` places after the point, rounded toward
// minus infinity (lower) or plus infinity (upper).  Exact directed rounding,
// so [decimal_lower(lo), decimal_upper(hi)] always contains [lo, hi].
std::string decimal_lower(const Rational& r, int digits);
std::string decimal_upper(const Rational& r, int digits);

// Probable-prime check used to validate p-power sequence configuration.
bool is_prime(const Integer& n);

// Trial-division factorization over primes <= bound; returns (prime, exponent)
// pairs plus the unfactored cofactor (1 when complete).
std::vector<std::pair<Integer, unsigned>> trial_factor(Integer n, unsigned bound,
                                                       Integer* cofactor);

}  // namespace surdlab

#endif
