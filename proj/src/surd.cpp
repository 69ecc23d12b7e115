#include "surdlab/surd.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "surdlab/enclosures.hpp"
#include "surdlab/errors.hpp"

namespace surdlab {

/* ----------------------------- QuadExt ------------------------------ */

QuadExt::QuadExt(Rational a, Rational b, Integer d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ < 2) {
        if (b_ != 0) throw NonPositiveInputError("radicand must be >= 2, got " + d_.str());
        d_ = 2;
        return;
    }
    Integer root;
    if (is_perfect_square(d_, &root)) {
        // sqrt(d) is an integer: fold the irrational part into the rational one.
        a_ += b_ * Rational(root);
        b_ = 0;
        d_ = 2;
    }
}

int QuadExt::sign() const {
    int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
    int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b| sqrt(d) decides, i.e. a^2 vs b^2 d.
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0;  // unreachable for non-square d, kept for safety
    return (lhs > rhs) ? sa : sb;
}

namespace {

// Rewrites y onto x's radicand when the two are commensurable, i.e. when
// d_x * d_y is a perfect square s^2 (then sqrt(d_y) = (s/d_y) * sqrt(d_x)
// does not hold literally; the correct identity is
// sqrt(d_y) = sqrt(d_x * d_y) / sqrt(d_x) = (s / d_x) * sqrt(d_x)).
bool align_radicand(const Integer& dx, QuadExt& y) {
    if (y.radicand() == dx || y.irr_coeff() == 0) {
        y = QuadExt(y.rat_part(), y.irr_coeff(), dx);
        return true;
    }
    Integer s;
    if (!is_perfect_square(dx * y.radicand(), &s)) return false;
    Rational coeff = y.irr_coeff() * Rational(s, dx);
    y = QuadExt(y.rat_part(), coeff, dx);
    return true;
}

}  // namespace

QuadExt QuadExt::operator+(const QuadExt& o) const {
    if (b_ == 0) {
        QuadExt r = o;
        return {r.a_ + a_, r.b_, r.d_};
    }
    QuadExt rhs = o;
    if (!align_radicand(d_, rhs))
        throw Error("incommensurable radicands " + d_.str() + " and " + o.d_.str());
    return {a_ + rhs.a_, b_ + rhs.b_, d_};
}

QuadExt QuadExt::operator-(const QuadExt& o) const { return *this + (-o); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
    if (b_ == 0) {
        QuadExt r = o;
        return {r.a_ * a_, r.b_ * a_, r.d_};
    }
    QuadExt rhs = o;
    if (!align_radicand(d_, rhs))
        throw Error("incommensurable radicands " + d_.str() + " and " + o.d_.str());
    return {a_ * rhs.a_ + b_ * rhs.b_ * Rational(d_), a_ * rhs.b_ + b_ * rhs.a_, d_};
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
    if (o.is_zero()) throw ZeroDenominatorError("division by zero quadratic value");
    if (o.b_ == 0) return {a_ / o.a_, b_ / o.a_, d_};
    Integer d = (b_ == 0) ? o.d_ : d_;
    QuadExt lhs(a_, b_, d);
    QuadExt rhs = o;
    if (!align_radicand(d, rhs))
        throw Error("incommensurable radicands " + d_.str() + " and " + o.d_.str());
    // Multiply by the conjugate; the norm a^2 - b^2 d vanishes only at zero.
    Rational norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * Rational(d);
    QuadExt prod = lhs * QuadExt(rhs.a_, -rhs.b_, d);
    return {prod.a_ / norm, prod.b_ / norm, d};
}

int QuadExt::compare(const QuadExt& o) const {
    if (b_ == 0) return QuadExt(a_ - o.a_, -o.b_, o.d_).sign();
    QuadExt rhs = o;
    if (align_radicand(d_, rhs)) {
        return QuadExt(a_ - rhs.a_, b_ - rhs.b_, d_).sign();
    }
    // Incommensurable radicands: the values cannot be equal, so interval
    // refinement separates them.
    Rational tol(1, 16);
    for (int round = 0; round < 2048; ++round) {
        RationalInterval x = enclosure(tol);
        RationalInterval y = o.enclosure(tol);
        if (x.definitely_less(y)) return -1;
        if (y.definitely_less(x)) return 1;
        tol /= 65536;
    }
    throw PrecisionError("comparison refinement budget exhausted");
}

int QuadExt::compare(const Rational& s) const {
    QuadExt diff(a_ - s, b_, d_);
    return diff.sign();
}

Integer QuadExt::floor() const {
    if (b_ == 0) return rational_floor(a_);
    RationalInterval iv = enclosure(Rational(1, 4));
    Integer n = rational_floor(iv.lo());
    while (compare(Rational(n + 1)) >= 0) ++n;
    while (compare(Rational(n)) < 0) --n;
    return n;
}

std::pair<Integer, QuadExt> QuadExt::nearest() const {
    Integer f = floor();
    QuadExt frac = *this - Rational(f);
    int c = frac.compare(Rational(1, 2));
    if (c <= 0) return {f, frac};
    return {f + 1, (QuadExt::rational(Rational(f + 1)) - *this)};
}

RationalInterval QuadExt::enclosure(const Rational& tol) const {
    if (tol <= 0) throw NonPositiveInputError("enclosure tol must be positive");
    if (b_ == 0) return RationalInterval::exact(a_);
    Rational babs = b_ < 0 ? Rational(-b_) : b_;
    RationalInterval s = sqrt_enclosure(d_, tol / (2 * babs));
    return RationalInterval::exact(a_) + s * b_;
}

std::string QuadExt::to_string() const {
    std::ostringstream os;
    os << a_;
    if (b_ != 0) os << (b_ > 0 ? " + " : " - ") << boost::multiprecision::abs(b_)
                    << "*sqrt(" << d_ << ")";
    return os.str();
}

/* --------------------------- QuadraticSurd --------------------------- */

namespace {

// Largest g with g | P, g | Q, g^2 | D and g*Q | D - P^2; dividing the triple
// through by such a g preserves both the value and the PQa invariant, and
// composing two reductions is again a reduction, so taking the maximum gives
// a canonical representative.
Integer best_reduction(const Integer& P, const Integer& D, const Integer& Q) {
    Integer G = boost::multiprecision::gcd(boost::multiprecision::abs(P),
                                           boost::multiprecision::abs(Q));
    if (G <= 1) return 1;
    Integer cofactor;
    auto factors = trial_factor(G, 100000, &cofactor);
    if (cofactor > 1) factors.emplace_back(cofactor, 1u);
    std::vector<Integer> divisors{1};
    for (const auto& [p, e] : factors) {
        std::size_t count = divisors.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * pk);
        }
    }
    Integer best = 1;
    Integer target = D - P * P;
    for (const Integer& g : divisors) {
        if (g <= best) continue;
        if (D % (g * g) != 0) continue;
        if (target % (g * Q) != 0) continue;
        best = g;
    }
    return best;
}

}  // namespace

QuadraticSurd QuadraticSurd::canonicalize(Integer P, Integer D, Integer Q) {
    if (Q == 0) throw ZeroDenominatorError("surd with Q = 0");
    if (D <= 1) throw NonPositiveInputError("radicand must be >= 2, got " + D.str());
    if (is_perfect_square(D)) throw PerfectSquareError("radicand " + D.str() + " is a square");
    if ((D - P * P) % Q != 0) {
        Integer aq = boost::multiprecision::abs(Q);
        P *= aq;
        D *= Q * Q;
        Q *= aq;
    }
    Integer g = best_reduction(P, D, Q);
    if (g > 1) {
        P /= g;
        D /= g * g;
        Q /= g;
    }
    return QuadraticSurd(std::move(P), std::move(D), std::move(Q));
}

QuadraticSurd QuadraticSurd::square_root(const Integer& D) {
    return canonicalize(0, D, 1);
}

// cpp_rational's two-argument constructor rejects negative denominators, so
// the sign of Q moves into the numerators here.
QuadExt QuadraticSurd::value() const {
    Integer sg = q_ < 0 ? -1 : 1;
    return {Rational(Integer(sg * p_), Integer(sg * q_)), Rational(sg, Integer(sg * q_)), d_};
}

QuadExt QuadraticSurd::conjugate() const {
    Integer sg = q_ < 0 ? -1 : 1;
    return {Rational(Integer(sg * p_), Integer(sg * q_)), Rational(Integer(-sg), Integer(sg * q_)), d_};
}

Integer QuadraticSurd::floor() const {
    Integer s = isqrt(d_);
    if (q_ > 0) return floor_div(p_ + s, q_);
    return floor_div(-p_ - s - 1, -q_);
}

QuadraticSurd QuadraticSurd::scaled(const Integer& t) const {
    if (t == 0) throw Error("scaling a surd by zero");
    return canonicalize(t * p_, t * t * d_, q_);
}

QuadraticSurd QuadraticSurd::reciprocal() const {
    if (q_ > 0) return canonicalize(-q_ * p_, q_ * q_ * d_, d_ - p_ * p_);
    return canonicalize(q_ * p_, q_ * q_ * d_, p_ * p_ - d_);
}

bool QuadraticSurd::is_reduced() const {
    return value().compare(Rational(1)) > 0 && conjugate().compare(Rational(-1)) > 0 &&
           conjugate().compare(Rational(0)) < 0;
}

RationalInterval QuadraticSurd::enclosure(const Rational& tol) const {
    return value().enclosure(tol);
}

std::string QuadraticSurd::to_string() const {
    std::ostringstream os;
    os << "(" << p_ << "+sqrt(" << d_ << "))/" << q_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadraticSurd& x) {
    return os << x.to_string();
}

/* ------------------------------ parsing ------------------------------ */

namespace {

struct Cursor {
    std::string_view text;
    std::size_t i = 0;

    void skip_ws() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < text.size() && text[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i);
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (text.substr(i, w.size()) == w) {
            i += w.size();
            return true;
        }
        return false;
    }
    Integer integer() {
        skip_ws();
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        std::size_t start = i;
        Integer v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            ++i;
        }
        if (i == start) throw ParseError("expected an integer", i);
        return neg ? Integer(-v) : v;
    }
    void done() {
        skip_ws();
        if (i != text.size()) throw ParseError("trailing characters", i);
    }
};

Integer parse_sqrt_arg(Cursor& c) {
    if (!c.eat_word("sqrt")) throw ParseError("expected 'sqrt'", c.i);
    c.expect('(');
    Integer D = c.integer();
    c.expect(')');
    return D;
}

}  // namespace

QuadraticSurd parse_surd(std::string_view text) {
    Cursor c{text};
    c.skip_ws();
    if (c.i < text.size() && text[c.i] == 's') {
        Integer D = parse_sqrt_arg(c);
        c.done();
        return QuadraticSurd::square_root(D);
    }
    c.expect('(');
    Integer P = c.integer();
    c.skip_ws();
    int sign = 0;
    if (c.eat('+'))
        sign = 1;
    else if (c.eat('-'))
        sign = -1;
    else
        throw ParseError("expected '+' or '-' before sqrt", c.i);
    Integer D = parse_sqrt_arg(c);
    c.expect(')');
    c.expect('/');
    Integer Q = c.integer();
    c.done();
    // (P - sqrt(D))/Q == (-P + sqrt(D)) / (-Q)
    if (sign < 0) {
        P = -P;
        Q = -Q;
    }
    return QuadraticSurd::canonicalize(std::move(P), std::move(D), std::move(Q));
}

}  // namespace surdlab
