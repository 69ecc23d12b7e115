#ifndef SURDLAB_ENCLOSURES_HPP
#define SURDLAB_ENCLOSURES_HPP

#include "surdlab/interval.hpp"
#include "surdlab/numeric.hpp"

namespace surdlab {

/*
 * Certified enclosures of the handful of transcendental quantities the lab
 * needs.  Every function returns an interval that provably contains the exact
 * value and whose width is at most tol (for point inputs).  Refinement is
 * monotone: a smaller tol yields an interval contained in the coarser one,
 * because internal precision moves along a fixed ladder of nested dyadic
 * grids and nested series truncations.
 */

// sqrt(D) for a non-square integer D >= 2, by Newton iteration seeded at
// isqrt(D) with a matching certified lower bound.
RationalInterval sqrt_enclosure(const Integer& D, const Rational& tol);

// Natural log of a positive rational.  Very large or very small inputs are cut
// down first by extracting the power of two (digit-length reduction), then the
// mantissa in [1,2) goes through the atanh series with a rigorous tail bound.
RationalInterval log_enclosure(const Rational& x, const Rational& tol);

// Log of every point of a positive interval; adds at most tol of slack beyond
// the image width.
RationalInterval log_enclosure(const RationalInterval& x, const Rational& tol);

// exp of a rational or of every point of an interval, by argument reduction
// against a log-2 enclosure and a Taylor tail bound.  |x| is capped at 2^20.
RationalInterval exp_enclosure(const Rational& x, const Rational& tol);
RationalInterval exp_enclosure(const RationalInterval& x, const Rational& tol);

// u^e for integer u >= 1 and rational e, as exp(e * log u).
RationalInterval rational_pow_enclosure(const Integer& u, const Rational& e,
                                        const Rational& tol);

// log 2 and pi from their own memoized series ladders (atanh(1/3), Machin).
RationalInterval log2_enclosure(const Rational& tol);
RationalInterval pi_enclosure(const Rational& tol);

// pi^2 / (12 log 2), the almost-sure mean of log of a partial quotient under
// the Gauss measure, assembled from the pi and log-2 enclosures.
RationalInterval gauss_log_mean(const Rational& tol);

/*
 * The same constant integral int_0^1 -log x / (log 2 (1+x)) dx computed the
 * hard way, independent of the closed form: adaptive interval quadrature on
 * [eps, 1] with a centered-form remainder, plus a rigorous tail enclosure on
 * [0, eps] from the exact antiderivative of -log x and monotone bounds on
 * 1/(1+x).  Throws PrecisionError if the subdivision budget runs out.
 */
RationalInterval gauss_kuzmin_log_integral(const Rational& tol);

}  // namespace surdlab

#endif
