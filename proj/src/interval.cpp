#include "surdlab/interval.hpp"

#include <algorithm>
#include <initializer_list>

namespace surdlab {

RationalInterval::RationalInterval(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw Error("interval endpoints out of order");
}

RationalInterval RationalInterval::hull(const RationalInterval& a,
                                        const RationalInterval& b) {
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
}

RationalInterval RationalInterval::operator+(const RationalInterval& o) const {
    return {lo_ + o.lo_, hi_ + o.hi_};
}

RationalInterval RationalInterval::operator-(const RationalInterval& o) const {
    return {lo_ - o.hi_, hi_ - o.lo_};
}

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
    std::initializer_list<Rational> c = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_,
                                         hi_ * o.hi_};
    return {std::min(c), std::max(c)};
}

RationalInterval RationalInterval::operator/(const RationalInterval& o) const {
    return *this * o.reciprocal();
}

RationalInterval RationalInterval::operator*(const Rational& s) const {
    if (s >= 0) return {lo_ * s, hi_ * s};
    return {hi_ * s, lo_ * s};
}

RationalInterval RationalInterval::operator/(const Rational& s) const {
    if (s == 0) throw ZeroDenominatorError("interval divided by zero scalar");
    if (s > 0) return {lo_ / s, hi_ / s};
    return {hi_ / s, lo_ / s};
}

RationalInterval RationalInterval::reciprocal() const {
    if (contains_zero())
        throw ZeroDenominatorError("reciprocal of interval containing zero: " + to_string());
    return {1 / hi_, 1 / lo_};
}

RationalInterval RationalInterval::abs() const {
    if (lo_ >= 0) return *this;
    if (hi_ <= 0) return -*this;
    return {Rational(0), std::max(Rational(-lo_), hi_)};
}

RationalInterval RationalInterval::rounded_out(unsigned bits) const {
    return {dyadic_floor(lo_, bits), dyadic_ceil(hi_, bits)};
}

std::string RationalInterval::to_string() const {
    int digits = display_digits(*this);
    return "[" + decimal_lower(lo_, digits) + ", " + decimal_upper(hi_, digits) + "]";
}

std::string RationalInterval::to_pm_string() const {
    int digits = display_digits(*this);
    Rational radius = width() / 2;
    // Radius rounded up at two extra digits so "m +- r" always covers the interval.
    return decimal_lower(mid(), digits) + " +- " + decimal_upper(radius, digits + 2);
}

RationalInterval operator+(const Rational& s, const RationalInterval& iv) {
    return iv + s;
}

RationalInterval operator*(const Rational& s, const RationalInterval& iv) {
    return iv * s;
}

int display_digits(const RationalInterval& iv) {
    Rational w = iv.width();
    int digits = 6;
    if (w > 0) {
        Rational probe = w;
        digits = 0;
        while (probe < 1 && digits < 60) {
            probe *= 10;
            ++digits;
        }
        digits = std::min(60, digits + 2);
        digits = std::max(6, digits);
    } else {
        // Exact point: print enough to pin the denominator reasonably.
        digits = 12;
    }
    return digits;
}

}  // namespace surdlab
