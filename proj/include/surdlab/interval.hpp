#ifndef SURDLAB_INTERVAL_HPP
#define SURDLAB_INTERVAL_HPP

#include <string>

#include "surdlab/errors.hpp"
#include "surdlab/numeric.hpp"

namespace surdlab {

// Closed interval with exact rational endpoints.  Field arithmetic on rationals
// is exact, so +,-,*,/ introduce no rounding; endpoints only widen when a
// transcendental enclosure or an explicit outward compression is applied.
// Invariant: lo <= hi always.
class RationalInterval {
public:
    RationalInterval() : lo_(0), hi_(0) {}
    RationalInterval(Rational lo, Rational hi);

    static RationalInterval exact(const Rational& v) { return {v, v}; }
    static RationalInterval hull(const RationalInterval& a, const RationalInterval& b);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational mid() const { return (lo_ + hi_) / 2; }

    bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
    bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const RationalInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    bool is_positive() const { return lo_ > 0; }
    bool is_negative() const { return hi_ < 0; }
    bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }

    // Certified order tests: true only when every point of *this relates to
    // every point of o as stated.
    bool definitely_less(const RationalInterval& o) const { return hi_ < o.lo_; }
    bool definitely_le(const RationalInterval& o) const { return hi_ <= o.lo_; }

    RationalInterval operator-() const { return {-hi_, -lo_}; }
    RationalInterval operator+(const RationalInterval& o) const;
    RationalInterval operator-(const RationalInterval& o) const;
    RationalInterval operator*(const RationalInterval& o) const;
    // Throws ZeroDenominatorError if o straddles zero.
    RationalInterval operator/(const RationalInterval& o) const;

    RationalInterval operator+(const Rational& s) const { return {lo_ + s, hi_ + s}; }
    RationalInterval operator-(const Rational& s) const { return {lo_ - s, hi_ - s}; }
    RationalInterval operator*(const Rational& s) const;
    RationalInterval operator/(const Rational& s) const;

    RationalInterval reciprocal() const;
    RationalInterval abs() const;

    // Endpoints pushed outward onto the 2^-bits grid; keeps operand sizes
    // bounded inside long accumulations.
    RationalInterval rounded_out(unsigned bits) const;

    // Tight decimal rendering "[lo, hi]" with directed rounding outward.
    std::string to_string() const;
    // "m +- r" with the radius rounded up; for human-facing summaries.
    std::string to_pm_string() const;

private:
    Rational lo_, hi_;
};

RationalInterval operator+(const Rational& s, const RationalInterval& iv);
RationalInterval operator*(const Rational& s, const RationalInterval& iv);

// Decimal places needed so that printing at that precision loses nothing
// visible: enough to separate the endpoints, clamped to [6, 60].
int display_digits(const RationalInterval& iv);

}  // namespace surdlab

#endif
