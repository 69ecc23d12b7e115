#ifndef SURDLAB_SURD_HPP
#define SURDLAB_SURD_HPP

#include <iosfwd>
#include <string>

#include "surdlab/interval.hpp"
#include "surdlab/numeric.hpp"

namespace surdlab {

/*
 * Exact element of a real quadratic field, stored as a + b*sqrt(d) with
 * rational a, b and a fixed integer radicand d >= 2 (b may be zero, and a
 * plain rational is represented with b = 0).  This is the workhorse for exact
 * sign tests, comparisons and field arithmetic; the PQa machinery lives in
 * QuadraticSurd below, which is the normal form the expansion engine iterates.
 *
 * Comparisons across different radicands are aligned through the observation
 * that b1*sqrt(d1) = b2*sqrt(d2) with b1,b2 != 0 forces d1*d2 to be a perfect
 * square; when d1*d2 is not a square the two irrational parts are
 * incommensurable and an interval refinement separates the values in finitely
 * many steps.
 */
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(2) {}
    QuadExt(Rational a, Rational b, Integer d);
    static QuadExt rational(const Rational& a) { return {a, Rational(0), Integer(2)}; }

    const Rational& rat_part() const { return a_; }
    const Rational& irr_coeff() const { return b_; }
    const Integer& radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    // Exact sign: -1, 0, +1.
    int sign() const;
    bool is_zero() const { return sign() == 0; }

    QuadExt operator-() const { return {-a_, -b_, d_}; }
    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt operator/(const QuadExt& o) const;  // throws ZeroDenominatorError on o == 0
    QuadExt operator+(const Rational& s) const { return {a_ + s, b_, d_}; }
    QuadExt operator-(const Rational& s) const { return {a_ - s, b_, d_}; }
    QuadExt operator*(const Rational& s) const { return {a_ * s, b_ * s, d_}; }
    QuadExt abs() const { return sign() >= 0 ? *this : -*this; }
    QuadExt galois_conjugate() const { return {a_, -b_, d_}; }

    // Exact three-way comparison, any radicands.  <0, 0, >0 like a spaceship.
    int compare(const QuadExt& o) const;
    int compare(const Rational& s) const;
    bool operator==(const QuadExt& o) const { return compare(o) == 0; }
    bool operator<(const QuadExt& o) const { return compare(o) < 0; }

    Integer floor() const;
    // Nearest integer and the distance to it; the distance is ||x|| when the
    // fractional part is not exactly 1/2 (it never is for irrational values).
    std::pair<Integer, QuadExt> nearest() const;

    // Certified enclosure of width <= tol.
    RationalInterval enclosure(const Rational& tol) const;

    std::string to_string() const;

private:
    Rational a_, b_;
    Integer d_;
};

/*
 * Canonical quadratic surd (P + sqrt(D))/Q in PQa form:
 *
 *   Q != 0, D >= 2 not a perfect square, and Q | D - P^2.
 *
 * The divisibility condition is what keeps the continued-fraction recurrence
 *   P' = a*Q - P,  Q' = (D - P'^2)/Q
 * inside the integers, so every constructor route restores it:
 *   - if Q does not divide D - P^2, the triple is rescaled to
 *     (P*|Q|, D*Q^2, Q*|Q|), which leaves the value unchanged;
 *   - afterwards the largest g with g | P, g | Q, g^2 | D and g*Q | D - P^2 is
 *     divided out, so integer scaling composes to the same triple whichever
 *     way it is associated.
 * canonicalize is idempotent and two equal-value canonical triples produced by
 * scaling the same surd are identical.
 */
class QuadraticSurd {
public:
    // Canonicalizing constructor; throws PerfectSquareError, ZeroDenominatorError.
    static QuadraticSurd canonicalize(Integer P, Integer D, Integer Q);
    // Shorthand for sqrt(D).
    static QuadraticSurd square_root(const Integer& D);

    const Integer& P() const { return p_; }
    const Integer& D() const { return d_; }
    const Integer& Q() const { return q_; }

    QuadExt value() const;
    // (P - sqrt(D))/Q as an exact value, usable for sign and interval queries.
    QuadExt conjugate() const;

    /*
     * floor((P + sqrt(D))/Q) without any floating point:
     * with s = isqrt(D), sqrt(D) lies strictly inside (s, s+1), so
     *   Q > 0:  floor = floor((P + s)/Q)
     *   Q < 0:  floor = floor((-P - s - 1)/|Q|)
     * Both cases rely only on the irrationality of sqrt(D).
     */
    Integer floor() const;

    // t * x, canonicalized.  t = 0 is rejected (the result must stay a surd).
    QuadraticSurd scaled(const Integer& t) const;

    // 1/x, canonicalized.
    QuadraticSurd reciprocal() const;

    // Reduced in the continued-fraction sense: x > 1 and conjugate in (-1, 0).
    // Decided exactly through integer comparisons against isqrt(D).
    bool is_reduced() const;

    // Value equality across possibly different radicands.
    bool same_value(const QuadraticSurd& o) const { return value() == o.value(); }

    // Enclosure of width <= tol.
    RationalInterval enclosure(const Rational& tol) const;

    bool operator==(const QuadraticSurd& o) const {
        return p_ == o.p_ && d_ == o.d_ && q_ == o.q_;
    }

    // Renders "(P+sqrt(D))/Q".
    std::string to_string() const;

private:
    QuadraticSurd(Integer P, Integer D, Integer Q)
        : p_(std::move(P)), d_(std::move(D)), q_(std::move(Q)) {}
    Integer p_, d_, q_;
};

std::ostream& operator<<(std::ostream& os, const QuadraticSurd& x);

// Parses "sqrt(D)", "(P+sqrt(D))/Q" or "(P-sqrt(D))/Q" with optional signs and
// whitespace.  Throws ParseError with the offending position.
QuadraticSurd parse_surd(std::string_view text);

}  // namespace surdlab

#endif
