#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "surdlab/enclosures.hpp"
#include "surdlab/errors.hpp"
#include "surdlab/interval.hpp"

using namespace surdlab;
using namespace surdlab::oracles;

/* ----- interval arithmetic ----- */

TEST_CASE("interval construction and basic queries") {
    RationalInterval iv(Rational(1, 3), Rational(1, 2));
    CHECK(iv.lo() == Rational(1, 3));
    CHECK(iv.hi() == Rational(1, 2));
    CHECK(iv.width() == Rational(1, 6));
    CHECK(iv.mid() == Rational(5, 12));
    CHECK(iv.contains(Rational(2, 5)));
    CHECK_FALSE(iv.contains(Rational(3, 5)));
    CHECK(iv.is_positive());
    CHECK_FALSE(iv.contains_zero());
    CHECK_THROWS_AS(RationalInterval(Rational(1), Rational(0)), Error);
}

TEST_CASE("interval operators cover all sign combinations") {
    RationalInterval a(Rational(-2), Rational(3));
    RationalInterval b(Rational(4), Rational(5));
    RationalInterval s = a + b;
    CHECK(s.lo() == 2);
    CHECK(s.hi() == 8);
    RationalInterval d = a - b;
    CHECK(d.lo() == -7);
    CHECK(d.hi() == -1);
    RationalInterval p = a * b;
    CHECK(p.lo() == -10);
    CHECK(p.hi() == 15);
    RationalInterval n = -a;
    CHECK(n.lo() == -3);
    CHECK(n.hi() == 2);
    RationalInterval q = b / RationalInterval(Rational(2), Rational(4));
    CHECK(q.lo() == 1);
    CHECK(q.hi() == Rational(5, 2));
    CHECK_THROWS_AS(b / a, ZeroDenominatorError);  // a straddles zero
    CHECK_THROWS_AS(a.reciprocal(), ZeroDenominatorError);
    RationalInterval r = b.reciprocal();
    CHECK(r.lo() == Rational(1, 5));
    CHECK(r.hi() == Rational(1, 4));
    CHECK(a.abs().lo() == 0);
    CHECK(a.abs().hi() == 3);
    CHECK(RationalInterval::hull(a, b).lo() == -2);
    CHECK(RationalInterval::hull(a, b).hi() == 5);
    CHECK(a.intersects(RationalInterval(Rational(3), Rational(9))));
    CHECK_FALSE(a.intersects(b));
    CHECK(a.definitely_less(b));
    CHECK_FALSE(b.definitely_less(a));
    CHECK((a * Rational(-2)).lo() == -6);
    CHECK((a * Rational(-2)).hi() == 4);
    CHECK((a / Rational(-2)).lo() == Rational(-3, 2));
    CHECK((Rational(1) + a).hi() == 4);
    CHECK((Rational(2) * b).lo() == 8);
}

TEST_CASE("interval multiplication is the exact image, fuzzed") {
    std::mt19937 gen(3);
    auto rnd = [&gen] {
        return Rational(Integer(gen() % 4000) - 2000, Integer(gen() % 100) + 1);
    };
    for (int i = 0; i < 300; ++i) {
        Rational a1 = rnd(), a2 = rnd(), b1 = rnd(), b2 = rnd();
        RationalInterval a(std::min(a1, a2), std::max(a1, a2));
        RationalInterval b(std::min(b1, b2), std::max(b1, b2));
        RationalInterval p = a * b;
        // endpoints are attained by endpoint products, and sample points stay inside
        CHECK(p.contains(a.lo() * b.lo()));
        CHECK(p.contains(a.hi() * b.hi()));
        CHECK(p.contains(a.mid() * b.mid()));
        CHECK((-a * b).lo() == (-(a * b)).lo());
    }
}

TEST_CASE("rounded_out lands on the dyadic grid and keeps containment") {
    RationalInterval iv(Rational(1, 3), Rational(2, 3));
    for (unsigned bits : {4u, 16u, 128u}) {
        RationalInterval out = iv.rounded_out(bits);
        CHECK(out.contains(iv));
        CHECK(out.width() - iv.width() <= Rational(2, Integer(1) << bits));
        CHECK((Integer(1) << bits) % den(out.lo()) == 0);
        CHECK((Integer(1) << bits) % den(out.hi()) == 0);
    }
}

TEST_CASE("to_string parses back to an enclosing interval") {
    std::mt19937 gen(17);
    for (int i = 0; i < 100; ++i) {
        Rational c(Integer(gen()) - Integer(gen()), Integer(gen() % 100000) + 1);
        Rational w(1, Integer(gen() % 1000) + 2);
        RationalInterval iv(c, c + w);
        std::string s = iv.to_string();
        REQUIRE(s.front() == '[');
        REQUIRE(s.back() == ']');
        auto comma = s.find(", ");
        REQUIRE(comma != std::string::npos);
        Rational lo = rational_from_string(s.substr(1, comma - 1));
        Rational hi = rational_from_string(s.substr(comma + 2, s.size() - comma - 3));
        CHECK(lo <= iv.lo());
        CHECK(iv.hi() <= hi);
    }
}

TEST_CASE("display_digits separates the endpoints and stays clamped") {
    CHECK(display_digits(RationalInterval(Rational(0), Rational(1))) == 6);
    RationalInterval narrow(Rational(1, 3), Rational(1, 3) + Rational(1, Integer("1" + std::string(100, '0'))));
    CHECK(display_digits(narrow) == 60);
    RationalInterval mid(Rational(1, 3), Rational(1, 3) + Rational(1, 1000000000));
    int d = display_digits(mid);
    CHECK(d >= 9);
    CHECK(d <= 60);
}

/* ----- certified enclosures vs the decimal oracle ----- */

TEST_CASE("sqrt enclosures contain the oracle root") {
    for (int d = 2; d <= 60; ++d) {
        if (is_perfect_square(Integer(d))) continue;
        RationalInterval iv = sqrt_enclosure(d, rational_from_string("1e-30"));
        CHECK(iv.width() <= rational_from_string("1e-30"));
        CHECK(contains_value(iv, o_sqrt(d)));
    }
    CHECK_THROWS_AS(sqrt_enclosure(-2, Rational(1, 10)), NonPositiveInputError);
}

TEST_CASE("log enclosures contain the oracle and refine monotonically") {
    std::mt19937 gen(23);
    for (int i = 0; i < 40; ++i) {
        Rational x(Integer(gen() % 1000000) + 1, Integer(gen() % 1000) + 1);
        RationalInterval coarse = log_enclosure(x, Rational(1, 1000));
        RationalInterval fine = log_enclosure(x, rational_from_string("1e-30"));
        CHECK(coarse.width() <= Rational(1, 1000));
        CHECK(fine.width() <= rational_from_string("1e-30"));
        CHECK(coarse.contains(fine));
        CHECK(contains_value(fine, o_log(x)));
    }
    // power-of-two extraction handles extreme magnitudes
    Rational huge = Rational(Integer(1) << 400) / 3;
    Rational tiny = Rational(3, Integer(1) << 400);
    CHECK(contains_value(log_enclosure(huge, rational_from_string("1e-25")), o_log(huge)));
    CHECK(contains_value(log_enclosure(tiny, rational_from_string("1e-25")), o_log(tiny)));
    CHECK(log_enclosure(Rational(1), Rational(1, 1000)).contains(Rational(0)));
    CHECK_THROWS_AS(log_enclosure(Rational(0), Rational(1, 10)), NonPositiveInputError);
    CHECK_THROWS_AS(log_enclosure(Rational(-3), Rational(1, 10)), NonPositiveInputError);
}

TEST_CASE("interval log encloses the image of the whole interval") {
    RationalInterval x(Rational(3, 2), Rational(8, 3));
    RationalInterval lg = log_enclosure(x, Rational(1, 100000));
    CHECK(contains_value(lg, o_log(x.lo())));
    CHECK(contains_value(lg, o_log(x.hi())));
    CHECK(contains_value(lg, o_log(Rational(2))));
}

TEST_CASE("exp enclosures contain the oracle, both signs") {
    std::mt19937 gen(29);
    for (int i = 0; i < 40; ++i) {
        Rational x(Integer(gen() % 2000) - 1000, Integer(gen() % 100) + 7);
        RationalInterval iv = exp_enclosure(x, rational_from_string("1e-20"));
        CHECK(contains_value(iv, o_exp(x), Float200("1e-60")));
        RationalInterval coarse = exp_enclosure(x, Rational(1, 100));
        CHECK(coarse.contains(iv));
    }
    CHECK(exp_enclosure(Rational(0), Rational(1, 1000)).contains(Rational(1)));
    CHECK_THROWS_AS(exp_enclosure(Rational(Integer(1) << 21), Rational(1, 10)), PrecisionError);
}

TEST_CASE("exp of log returns to the input") {
    for (Rational x : {Rational(2), Rational(7, 3), Rational(150), Rational(1, 17)}) {
        RationalInterval lg = log_enclosure(x, rational_from_string("1e-25"));
        RationalInterval back = exp_enclosure(lg, rational_from_string("1e-20"));
        CHECK(back.contains(x));
        CHECK(back.width() <= Rational(1, 100000));
    }
}

TEST_CASE("rational powers of integers match the oracle") {
    using boost::multiprecision::pow;
    std::mt19937 gen(41);
    for (int i = 0; i < 25; ++i) {
        Integer u = Integer(gen() % 5000) + 2;
        Rational e(Integer(gen() % 200) - 100, Integer(gen() % 60) + 2);
        if (e > 8 || e < -8) e /= 16;  // keep exp in certified range
        RationalInterval iv = rational_pow_enclosure(u, e, rational_from_string("1e-18"));
        Float200 expect = pow(Float200(u.str()), to_f200(e));
        CHECK(contains_value(iv, expect, Float200("1e-50")));
    }
    CHECK(rational_pow_enclosure(7, Rational(0), Rational(1, 1000)).contains(Rational(1)));
    CHECK(rational_pow_enclosure(1, Rational(5, 3), Rational(1, 1000)).contains(Rational(1)));
    // u^(1/2) agrees with the dedicated square root
    RationalInterval a = rational_pow_enclosure(2, Rational(1, 2), rational_from_string("1e-15"));
    RationalInterval b = sqrt_enclosure(2, rational_from_string("1e-15"));
    CHECK(a.intersects(b));
}

/* ----- shared constants ----- */

TEST_CASE("log 2 and pi ladders contain the oracle values and nest") {
    RationalInterval l6 = log2_enclosure(rational_from_string("1e-6"));
    RationalInterval l12 = log2_enclosure(rational_from_string("1e-12"));
    RationalInterval l40 = log2_enclosure(rational_from_string("1e-40"));
    CHECK(l6.contains(l12));
    CHECK(l12.contains(l40));
    CHECK(contains_value(l40, o_ln2()));

    RationalInterval p6 = pi_enclosure(rational_from_string("1e-6"));
    RationalInterval p40 = pi_enclosure(rational_from_string("1e-40"));
    CHECK(p6.contains(p40));
    CHECK(contains_value(p40, o_pi()));
    CHECK(p40.width() <= rational_from_string("1e-40"));
}

TEST_CASE("gauss log mean equals pi^2/(12 log 2) by the oracle") {
    RationalInterval g = gauss_log_mean(rational_from_string("1e-12"));
    Float200 expect = o_pi() * o_pi() / (12 * o_ln2());
    CHECK(contains_value(g, expect));
    CHECK(g.width() <= rational_from_string("1e-12"));
    CHECK(gauss_log_mean(rational_from_string("1e-6")).contains(g));
}

TEST_CASE("quadrature route agrees with the closed form") {
    RationalInterval quad = gauss_kuzmin_log_integral(Rational(1, 1000));
    RationalInterval series = gauss_log_mean(rational_from_string("1e-12"));
    CHECK(quad.contains(series));  // same constant, certified both ways
    Float200 expect = o_pi() * o_pi() / (12 * o_ln2());
    CHECK(contains_value(quad, expect));
    CHECK(quad.width() <= Rational(1, 1000));
}

/* ----- long random compositions stay sound ----- */

TEST_CASE("five hundred random interval compositions contain the tracked value") {
    std::mt19937 gen(4242);
    Rational tol = rational_from_string("1e-18");
    for (int rep = 0; rep < 12; ++rep) {
        Rational x0(Integer(gen() % 1000) + 1, Integer(gen() % 100) + 1);
        RationalInterval iv = RationalInterval::exact(x0);
        Float200 v = to_f200(x0);
        for (int step = 0; step < 42; ++step) {
            switch (gen() % 5) {
                case 0: {
                    Rational s(Integer(gen() % 100) + 1, Integer(gen() % 50) + 1);
                    iv = iv + s;
                    v += to_f200(s);
                    break;
                }
                case 1: {
                    Rational s(Integer(gen() % 100) + 1, Integer(gen() % 50) + 1);
                    iv = iv * s;
                    v *= to_f200(s);
                    break;
                }
                case 2:
                    if (iv.is_positive() && iv.hi() < Rational(1000000)) {
                        iv = log_enclosure(iv + Rational(1), tol);
                        v = log(1 + v);
                    }
                    break;
                case 3:
                    if (iv.hi() < 20 && iv.lo() > -20) {
                        iv = exp_enclosure(iv, tol);
                        v = exp(v);
                    }
                    break;
                default:
                    if (!iv.contains_zero()) {
                        iv = iv.reciprocal();
                        v = 1 / v;
                    }
                    break;
            }
            iv = iv.rounded_out(600);
            CHECK(contains_value(iv, v, Float200("1e-100")));
        }
    }
}
