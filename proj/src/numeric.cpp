#include "surdlab/numeric.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cctype>

#include "surdlab/errors.hpp"

namespace surdlab {

Integer isqrt(const Integer& n) {
    if (n < 0) throw NonPositiveInputError("isqrt of negative " + n.str());
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Integer& n, Integer* root) {
    if (n < 0) return false;
    Integer s = boost::multiprecision::sqrt(n);
    if (s * s != n) return false;
    if (root) *root = s;
    return true;
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0) throw ZeroDenominatorError("floor_div by zero");
    Integer q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Integer rational_floor(const Rational& r) { return floor_div(num(r), den(r)); }

Integer rational_ceil(const Rational& r) { return -floor_div(-num(r), den(r)); }

Rational dyadic_floor(const Rational& r, unsigned bits) {
    Integer scaled = floor_div(num(r) << bits, den(r));
    return Rational(scaled, Integer(1) << bits);
}

Rational dyadic_ceil(const Rational& r, unsigned bits) {
    Integer scaled = -floor_div(-(num(r) << bits), den(r));
    return Rational(scaled, Integer(1) << bits);
}

Integer fibonacci(unsigned k) {
    Integer a = 0, b = 1;
    for (unsigned i = 0; i < k; ++i) {
        Integer t = a + b;
        a = b;
        b = t;
    }
    return a;
}

std::pair<Integer, Integer> square_free_split(const Integer& D) {
    if (D <= 0) throw NonPositiveInputError("square_free_split of " + D.str());
    Integer s = 1, d = D;
    for (Integer p = 2; p <= 100000 && p * p <= d; ++p) {
        while (d % (p * p) == 0) {
            d /= p * p;
            s *= p;
        }
    }
    // Whatever is left may still be a perfect square (large prime squared).
    Integer root;
    if (is_perfect_square(d, &root)) {
        s *= root;
        d = 1;
    }
    return {s, d};
}

int decimal_digits(const Integer& n) {
    Integer a = n < 0 ? Integer(-n) : n;
    return static_cast<int>(a.str().size());
}

namespace {

bool parse_uint_here(std::string_view text, std::size_t& i, Integer& out) {
    std::size_t start = i;
    Integer v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
    }
    if (i == start) return false;
    out = v;
    return true;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    Integer int_part;
    if (!parse_uint_here(text, i, int_part)) throw ParseError("expected digits", i);

    Integer frac_num = 0;
    Integer frac_den = 1;
    if (i < text.size() && text[i] == '.') {
        ++i;
        std::size_t start = i;
        if (!parse_uint_here(text, i, frac_num)) throw ParseError("expected fraction digits", i);
        for (std::size_t k = start; k < i; ++k) frac_den *= 10;
    }

    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        Integer e;
        if (!parse_uint_here(text, i, e)) throw ParseError("expected exponent digits", i);
        if (e > 100000) throw ParseError("exponent out of range", i);
        exponent = e.convert_to<long>() * (eneg ? -1 : 1);
    } else if (i < text.size() && text[i] == '/') {
        ++i;
        Integer d;
        if (!parse_uint_here(text, i, d)) throw ParseError("expected denominator digits", i);
        if (d == 0) throw ParseError("zero denominator", i);
        skip_ws();
        if (i != text.size()) throw ParseError("trailing characters", i);
        Rational r(int_part, d);
        return neg ? Rational(-r) : r;
    }

    skip_ws();
    if (i != text.size()) throw ParseError("trailing characters", i);

    Rational r = Rational(int_part) + Rational(frac_num, frac_den);
    if (exponent > 0)
        for (long k = 0; k < exponent; ++k) r *= 10;
    else
        for (long k = 0; k > exponent; --k) r /= 10;
    return neg ? Rational(-r) : r;
}

namespace {

// Shared body for the two directed decimal renderers: value * 10^digits is
// floored (toward -inf) or ceiled, then the digit string is reassembled.
std::string decimal_directed(const Rational& r, int digits, bool round_up) {
    if (digits < 0) digits = 0;
    Integer pow10 = 1;
    for (int k = 0; k < digits; ++k) pow10 *= 10;
    Integer scaled_num = num(r) * pow10;
    Integer scaled =
        round_up ? -floor_div(-scaled_num, den(r)) : floor_div(scaled_num, den(r));
    bool neg = scaled < 0;
    Integer a = neg ? Integer(-scaled) : scaled;
    std::string s = a.str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out;
    if (neg) out += '-';
    out += s.substr(0, s.size() - digits);
    if (digits > 0) {
        out += '.';
        out += s.substr(s.size() - digits);
    }
    return out;
}

}  // namespace

std::string decimal_lower(const Rational& r, int digits) {
    return decimal_directed(r, digits, false);
}

std::string decimal_upper(const Rational& r, int digits) {
    return decimal_directed(r, digits, true);
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (Integer p : {2, 3, 5, 7, 11, 13}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    return boost::multiprecision::miller_rabin_test(n, 25);
}

std::vector<std::pair<Integer, unsigned>> trial_factor(Integer n, unsigned bound,
                                                       Integer* cofactor) {
    std::vector<std::pair<Integer, unsigned>> out;
    if (n < 0) n = -n;
    for (Integer p = 2; p <= bound && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1 && n <= bound) {
        out.emplace_back(n, 1);
        n = 1;
    }
    if (cofactor) *cofactor = n;
    return out;
}

}  // namespace surdlab
