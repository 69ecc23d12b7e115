#include "surdlab/enclosures.hpp"

#include <deque>
#include <mutex>
#include <vector>

#include "surdlab/errors.hpp"

namespace surdlab {

namespace {

/*
 * All refinement walks a fixed ladder: level k uses the dyadic grid with
 * 64*2^k bits and a series truncation that grows with k, and every level's
 * result is intersected with the previous one.  That makes enclosures at a
 * finer tolerance nested inside coarser ones by construction, and makes the
 * result a function of (input, levels visited) alone, independent of thread
 * schedule or cache state.
 */
constexpr int kMaxLevel = 16;

unsigned grid_bits(int level) { return 64u << level; }
unsigned series_terms(int level) { return 24u << level; }

RationalInterval intersect(const RationalInterval& a, const RationalInterval& b) {
    Rational lo = std::max(a.lo(), b.lo());
    Rational hi = std::min(a.hi(), b.hi());
    if (lo > hi) throw Error("enclosure ladder produced disjoint refinements");
    return {lo, hi};
}

/*
 * The series below run in fixed point on the 2^-bits grid: a value v is
 * carried as an integer V with V/2^bits <= v (lower track) or >= v (upper
 * track), and every multiply/divide rounds in the direction of its track.
 * Exact rational sums would normalize through gcds of multi-thousand-bit
 * numbers at every step; directed integer arithmetic keeps each step at a
 * bounded word count and still yields a certified bracket.
 */

Integer div_up(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

// floor((a*b)/2^bits) and ceil, for integer grid values of either sign.
Integer mul_down(const Integer& a, const Integer& b, unsigned bits) {
    return floor_div(a * b, Integer(1) << bits);
}
Integer mul_up(const Integer& a, const Integer& b, unsigned bits) {
    return div_up(a * b, Integer(1) << bits);
}

// atanh(z) for rational z in [0, 1/3], bracketed by the partial sum and the
// geometric tail bound z^(2J+1) / ((2J+1)(1 - z^2)).
RationalInterval atanh_bracket(const Rational& z, unsigned terms, unsigned bits) {
    if (z == 0) return RationalInterval::exact(Rational(0));
    Integer one = Integer(1) << bits;
    Integer z_lo = floor_div(num(z) << bits, den(z));
    Integer z_hi = div_up(num(z) << bits, den(z));
    Integer z2_lo = mul_down(z_lo, z_lo, bits);
    Integer z2_hi = mul_up(z_hi, z_hi, bits);
    Integer p_lo = z_lo, p_hi = z_hi;  // brackets of z^(2j+1)
    Integer s_lo = 0, s_hi = 0;
    for (unsigned j = 0; j < terms; ++j) {
        Integer k(2 * j + 1);
        s_lo += floor_div(p_lo, k);
        s_hi += div_up(p_hi, k);
        p_lo = mul_down(p_lo, z2_lo, bits);
        p_hi = mul_up(p_hi, z2_hi, bits);
    }
    Integer tail = div_up(p_hi << bits, Integer(2 * terms + 1) * (one - z2_hi));
    return RationalInterval(Rational(s_lo, one), Rational(s_hi + tail, one));
}

// ln 2 = 2 atanh(1/3); memoized per ladder level.
RationalInterval log2_level(int level) {
    static std::mutex mu;
    static std::vector<RationalInterval> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= level) {
        int k = static_cast<int>(cache.size());
        RationalInterval raw =
            atanh_bracket(Rational(1, 3), series_terms(k), grid_bits(k) + 32) * Rational(2);
        cache.push_back(k == 0 ? raw : intersect(cache.back(), raw));
    }
    return cache[level];
}

// atan(1/m) for integer m >= 2, alternating series with the first omitted
// term as the remainder bracket.  Terms 2^bits/((2j+1) m^(2j+1)) are exact
// integer divisions, floored into the lower sum and ceiled into the upper.
RationalInterval atan_inv_bracket(const Integer& m, unsigned terms, unsigned bits) {
    Integer one = Integer(1) << bits;
    Integer m2 = m * m;
    Integer mpow = m;  // m^(2j+1)
    Integer s_lo = 0, s_hi = 0;
    int sign = 1;
    for (unsigned j = 0; j < terms; ++j) {
        Integer denom = Integer(2 * j + 1) * mpow;
        if (sign > 0) {
            s_lo += floor_div(one, denom);
            s_hi += div_up(one, denom);
        } else {
            s_lo -= div_up(one, denom);
            s_hi -= floor_div(one, denom);
        }
        mpow *= m2;
        sign = -sign;
    }
    Integer rem = div_up(one, Integer(2 * terms + 1) * mpow);
    if (sign > 0)
        s_hi += rem;
    else
        s_lo -= rem;
    return RationalInterval(Rational(s_lo, one), Rational(s_hi, one));
}

// pi via Machin: pi = 16 atan(1/5) - 4 atan(1/239); memoized per level.
RationalInterval pi_level(int level) {
    static std::mutex mu;
    static std::vector<RationalInterval> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= level) {
        int k = static_cast<int>(cache.size());
        unsigned bits = grid_bits(k) + 32;
        RationalInterval raw = atan_inv_bracket(5, series_terms(k), bits) * Rational(16) -
                               atan_inv_bracket(239, series_terms(k) / 2 + 4, bits) * Rational(4);
        cache.push_back(k == 0 ? raw : intersect(cache.back(), raw));
    }
    return cache[level];
}

// Smallest ladder level whose cached ln 2 is tighter than `width`.
int log2_level_for(const Rational& width) {
    for (int k = 0; k <= kMaxLevel; ++k) {
        if (log2_level(k).width() <= width) return k;
    }
    throw PrecisionError("ln 2 ladder exhausted");
}

// x = m * 2^e with m in [1, 2); returns e and sets m.  Digit-length cut:
// the exponent comes from bit lengths, then at most two fixups.
long extract_pow2(const Rational& x, Rational& m) {
    long e = static_cast<long>(boost::multiprecision::msb(num(x))) -
             static_cast<long>(boost::multiprecision::msb(den(x)));
    m = x;
    if (e > 0)
        m /= Rational(Integer(1) << e);
    else if (e < 0)
        m *= Rational(Integer(1) << -e);
    while (m >= 2) {
        m /= 2;
        ++e;
    }
    while (m < 1) {
        m *= 2;
        --e;
    }
    return e;
}

// log of x >= 1 at one ladder level.
RationalInterval log_raw_level(const Rational& x, int level) {
    Rational m;
    long e = extract_pow2(x, m);
    unsigned bits = grid_bits(level);
    Rational m_lo = dyadic_floor(m, bits);
    Rational m_hi = dyadic_ceil(m, bits);
    if (m_hi > 2) m_hi = 2;  // grid ceil may step past the mantissa range
    RationalInterval series(
        atanh_bracket((m_lo - 1) / (m_lo + 1), series_terms(level), bits + 32).lo(),
        atanh_bracket((m_hi - 1) / (m_hi + 1), series_terms(level), bits + 32).hi());
    RationalInterval result = series * Rational(2);
    if (e != 0) {
        Rational budget = Rational(1, Integer(1) << (bits / 2)) / (e > 0 ? e : -e);
        result = result + log2_level(log2_level_for(budget)) * Rational(e);
    }
    return result;
}

constexpr long kExpArgCap = 1 << 20;

// Fixed dyadic approximation of ln 2 used only to pick the exp reduction
// integer n; any nearby constant works, it just has to be call-invariant.
const Rational& coarse_ln2() {
    static const Rational v(Integer(6243314768165359LL), Integer(1) << 53);
    return v;
}

// exp(s) for rational |s| <= 3/4 at one level: Taylor sum with the remainder
// bound |s|^J / J! * (J+1)/(J+1-|s|), valid for |s| < J+1.  The caller grids
// s first, so s * 2^bits is an exact (signed) integer.
RationalInterval exp_small_raw(const Rational& s, unsigned terms, unsigned bits) {
    Integer one = Integer(1) << bits;
    Integer S = floor_div(num(s) << bits, den(s));  // exact: den(s) | 2^bits
    Integer s_abs = S < 0 ? Integer(-S) : S;
    Integer t_lo = one, t_hi = one;  // brackets of s^j / j!
    Integer sum_lo = one, sum_hi = one;
    for (unsigned j = 1; j < terms; ++j) {
        Integer scale = Integer(j) << bits;
        Integer a = t_lo, b = t_hi;
        if (S >= 0) {
            t_lo = floor_div(a * S, scale);
            t_hi = div_up(b * S, scale);
        } else {
            t_lo = floor_div(b * S, scale);
            t_hi = div_up(a * S, scale);
        }
        sum_lo += t_lo;
        sum_hi += t_hi;
    }
    Integer rem = one;  // upper bound of |s|^j / j!, then the tail factor
    for (unsigned j = 1; j <= terms; ++j) rem = div_up(rem * s_abs, Integer(j) << bits);
    rem = div_up(rem * (Integer(terms + 1) << bits),
                 (Integer(terms + 1) << bits) - s_abs);
    return RationalInterval(Rational(sum_lo - rem, one), Rational(sum_hi + rem, one));
}

RationalInterval exp_raw_level(const Rational& x, long n, int level) {
    unsigned bits = grid_bits(level);
    Rational budget = Rational(1, Integer(1) << (bits / 2));
    long nabs = n < 0 ? -n : n;
    RationalInterval s = RationalInterval::exact(x);
    if (n != 0) {
        RationalInterval ln2 = log2_level(log2_level_for(budget / nabs));
        s = s - ln2 * Rational(n);
    }
    if (s.lo() < Rational(-3, 4) || s.hi() > Rational(3, 4))
        throw PrecisionError("exp argument reduction out of range");
    // Endpoints onto the grid first so series operands stay small.
    Rational slo = dyadic_floor(s.lo(), bits);
    Rational shi = dyadic_ceil(s.hi(), bits);
    unsigned terms = 24 + 8 * static_cast<unsigned>(level);
    RationalInterval core(exp_small_raw(slo, terms, bits + 32).lo(),
                          exp_small_raw(shi, terms, bits + 32).hi());
    Rational scale = n >= 0 ? Rational(Integer(1) << n) : Rational(1, Integer(1) << -n);
    return core * scale;
}

}  // namespace

RationalInterval sqrt_enclosure(const Integer& D, const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("sqrt tol must be positive");
    if (D < 0) throw NonPositiveInputError("sqrt of negative " + D.str());
    Integer root;
    if (is_perfect_square(D, &root)) return RationalInterval::exact(Rational(root));
    Integer s = isqrt(D);
    Rational hi(s + 1);
    Rational lo(s);
    RationalInterval best(lo, hi);
    for (int iter = 0; iter < 256; ++iter) {
        if (best.width() <= tol) return best;
        // Babylonian step keeps hi above sqrt(D); dividing back keeps lo below.
        hi = (hi + Rational(D) / hi) / 2;
        lo = Rational(D) / hi;
        // Outward compression so operand sizes track the achieved precision.
        Rational w = hi - lo;
        unsigned bits = 96;
        while (Rational(1, Integer(1) << bits) > w / 16 && bits < (1u << 24)) bits *= 2;
        lo = dyadic_floor(lo, bits);
        hi = dyadic_ceil(hi, bits);
        best = intersect(best, RationalInterval(lo, hi));
    }
    throw PrecisionError("sqrt enclosure iteration budget exhausted");
}

RationalInterval log_enclosure(const Rational& x, const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("log tol must be positive");
    if (x <= 0) throw NonPositiveInputError("log of non-positive input");
    if (x == 1) return RationalInterval::exact(Rational(0));
    if (x < 1) return -log_enclosure(1 / x, tol);
    RationalInterval best = log_raw_level(x, 0);
    for (int k = 1; k <= kMaxLevel && best.width() > tol; ++k)
        best = intersect(best, log_raw_level(x, k));
    if (best.width() > tol) throw PrecisionError("log ladder exhausted");
    return best;
}

RationalInterval log_enclosure(const RationalInterval& x, const Rational& tol) {
    RationalInterval lo = log_enclosure(x.lo(), tol / 2);
    RationalInterval hi = x.width() == 0 ? lo : log_enclosure(x.hi(), tol / 2);
    return {lo.lo(), hi.hi()};
}

RationalInterval exp_enclosure(const Rational& x, const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("exp tol must be positive");
    if (x == 0) return RationalInterval::exact(Rational(1));
    if (x > kExpArgCap || x < -kExpArgCap)
        throw PrecisionError("exp argument magnitude above 2^20");
    long n = rational_floor(x / coarse_ln2() + Rational(1, 2)).convert_to<long>();
    RationalInterval best = exp_raw_level(x, n, 0);
    for (int k = 1; k <= kMaxLevel && best.width() > tol; ++k)
        best = intersect(best, exp_raw_level(x, n, k));
    if (best.width() > tol) throw PrecisionError("exp ladder exhausted");
    return best;
}

RationalInterval exp_enclosure(const RationalInterval& x, const Rational& tol) {
    RationalInterval lo = exp_enclosure(x.lo(), tol / 2);
    RationalInterval hi = x.width() == 0 ? lo : exp_enclosure(x.hi(), tol / 2);
    return {lo.lo(), hi.hi()};
}

RationalInterval rational_pow_enclosure(const Integer& u, const Rational& e,
                                        const Rational& tol) {
    if (u < 1) throw NonPositiveInputError("pow base must be >= 1, got " + u.str());
    if (u == 1 || e == 0) return RationalInterval::exact(Rational(1));
    Rational inner = tol / 4;
    RationalInterval best = exp_enclosure(log_enclosure(u, inner) * e, inner);
    for (int k = 1; k <= kMaxLevel && best.width() > tol; ++k) {
        inner /= 64;
        best = intersect(best, exp_enclosure(log_enclosure(u, inner) * e, inner));
    }
    if (best.width() > tol) throw PrecisionError("pow ladder exhausted");
    return best;
}

RationalInterval log2_enclosure(const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("tol must be positive");
    for (int k = 0; k <= kMaxLevel; ++k) {
        RationalInterval iv = log2_level(k);
        if (iv.width() <= tol) return iv;
    }
    throw PrecisionError("ln 2 ladder exhausted");
}

RationalInterval pi_enclosure(const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("tol must be positive");
    for (int k = 0; k <= kMaxLevel; ++k) {
        RationalInterval iv = pi_level(k);
        if (iv.width() <= tol) return iv;
    }
    throw PrecisionError("pi ladder exhausted");
}

RationalInterval gauss_log_mean(const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("tol must be positive");
    RationalInterval best = pi_level(0) * pi_level(0) / (log2_level(0) * Rational(12));
    for (int k = 1; k <= kMaxLevel && best.width() > tol; ++k) {
        RationalInterval pi_iv = pi_level(k);
        best = intersect(best, pi_iv * pi_iv / (log2_level(k) * Rational(12)));
    }
    if (best.width() > tol) throw PrecisionError("gauss mean ladder exhausted");
    return best;
}

namespace {

/*
 * One quadrature level of int_eps^1 g with g(x) = -log x / (ln2 (1+x)):
 * adaptive bisection where each accepted piece [a,b] contributes
 *   (b-a) * g(mid)  +  [-1,1] * width(g'([a,b])) * (b-a)^2 / 8,
 * the centered form with the mean-value remainder.  Pieces are accepted once
 * their enclosure width is below budget*(b-a), so the total width is at most
 * budget plus the midpoint-evaluation slack.
 */
RationalInterval quad_main_level(int qlevel, const Rational& eps,
                                 const Rational& budget) {
    RationalInterval ln2 = log2_level(log2_level_for(budget / 64));
    Rational point_tol = budget / 8;
    RationalInterval total = RationalInterval::exact(Rational(0));
    std::deque<std::pair<Rational, Rational>> work{{eps, Rational(1)}};
    std::size_t processed = 0;
    unsigned sum_bits = 256 + 16 * static_cast<unsigned>(qlevel);
    while (!work.empty()) {
        if (++processed > 4000000) throw PrecisionError("quadrature piece budget exhausted");
        auto [a, b] = work.front();
        work.pop_front();
        Rational h = b - a;
        Rational mid = (a + b) / 2;

        RationalInterval X(a, b);
        RationalInterval logX = log_enclosure(X, point_tol);
        // g'(x) = (log x - (1+x)/x) / (ln2 (1+x)^2); (1+x)/x is decreasing,
        // so its range over [a,b] is [(b+1)/b, (a+1)/a].
        RationalInterval one_plus = X + Rational(1);
        RationalInterval ratio((b + 1) / b, (a + 1) / a);
        RationalInterval deriv =
            (logX - ratio) * (ln2 * one_plus * one_plus).reciprocal();

        Rational corr = deriv.width() * h * h / 8;
        RationalInterval gm = -log_enclosure(mid, point_tol) *
                              (ln2 * (mid + Rational(1))).reciprocal();
        RationalInterval piece = gm * h + RationalInterval(-corr, corr);
        if (piece.width() <= budget * h) {
            total = (total + piece).rounded_out(sum_bits);
        } else {
            work.emplace_front(mid, b);
            work.emplace_front(a, mid);
        }
    }
    return total;
}

// Tail int_0^eps g dx with eps = 2^-k: the -log x factor integrates exactly to
// eps(1 + k ln 2), and 1/(1+x) is squeezed between 1/(1+eps) and 1.
RationalInterval quad_tail(unsigned k, const Rational& budget) {
    Rational eps(1, Integer(1) << k);
    RationalInterval ln2 = log2_level(log2_level_for(budget / 16));
    RationalInterval area = (ln2 * Rational(k) + Rational(1)) * eps;  // int of -log x
    RationalInterval squeeze(1 / (1 + eps), Rational(1));
    return area * squeeze / ln2;
}

}  // namespace

RationalInterval gauss_kuzmin_log_integral(const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("tol must be positive");
    static std::mutex mu;
    static std::vector<RationalInterval> cache;
    std::lock_guard<std::mutex> lock(mu);
    for (int j = 0; j < 8; ++j) {
        if (static_cast<int>(cache.size()) <= j) {
            unsigned k = 16 + 8 * static_cast<unsigned>(j);
            Rational budget = Rational(1, Integer(1) << (12 + 10 * j));
            RationalInterval raw =
                quad_main_level(j, Rational(1, Integer(1) << k), budget) +
                quad_tail(k, budget);
            cache.push_back(j == 0 ? raw : intersect(cache.back(), raw));
        }
        if (cache[j].width() <= tol) return cache[j];
    }
    throw PrecisionError("quadrature ladder exhausted");
}

}  // namespace surdlab
