/*
 * Gate binary: every release-blocking check in one place, one line per
 * criterion.  Exits 0 when all required criteria hold and the one known
 * out-of-reach target keeps failing; any other combination exits 1.
 */

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "surdlab/cf.hpp"
#include "surdlab/config.hpp"
#include "surdlab/enclosures.hpp"
#include "surdlab/errors.hpp"
#include "surdlab/lab.hpp"
#include "surdlab/serialize.hpp"

using namespace surdlab;
using namespace surdlab::oracles;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string name;
    bool expected_fail;  // known out of reach; failing keeps the gate green
    std::function<Outcome()> run;
};

QuadraticSurd silver() { return QuadraticSurd::canonicalize(1, 2, 1); }
QuadraticSurd golden() { return QuadraticSurd::canonicalize(1, 5, 2); }

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << s << "s";
    return os.str();
}

/* ----- 1: expansions against the high-precision float oracle ----- */

Outcome expansion_oracle() {
    std::vector<QuadraticSurd> corpus;
    Integer root;
    for (int d = 2; d <= 50; ++d)
        if (!is_perfect_square(d, &root)) corpus.push_back(QuadraticSurd::square_root(d));
    corpus.push_back(golden());
    const int samples[][3] = {{1, 2, 2},  {3, 37, 7},  {11, 203, 14},
                              {5, 13, 6}, {7, 53, 2},  {1, 13, 3},
                              {4, 19, 3}, {9, 140, 11}, {13, 151, 5}};
    for (const auto& s : samples)
        corpus.push_back(QuadraticSurd::canonicalize(s[0], s[1], s[2]));
    std::size_t quotients_checked = 0;
    for (const QuadraticSurd& x : corpus) {
        PeriodicCF cf = expand(x);
        verify_cycle_minimality(x, cf);
        std::size_t terms = std::min<std::size_t>(200, cf.m() + 2 * cf.l());
        std::vector<Integer> expect = oracle_quotients(x, terms);
        for (std::size_t k = 0; k < terms; ++k) {
            if (cf.quotient(k) != expect[k]) {
                std::ostringstream os;
                os << "mismatch at term " << k << " of " << x.to_string() << ": got "
                   << cf.quotient(k) << ", oracle says " << expect[k];
                return {false, os.str()};
            }
            ++quotients_checked;
        }
    }
    std::ostringstream os;
    os << corpus.size() << " surds, " << quotients_checked
       << " quotients agree with the 520-digit float oracle, all cycles minimal";
    return {true, os.str()};
}

/* ----- 2: partial-quotient bounds for scaled expansions ----- */

Outcome scaled_quotient_bounds() {
    std::vector<QuadraticSurd> alphas = {
        silver(), golden(), reduce_to_purely_periodic(QuadraticSurd::square_root(3)),
        reduce_to_purely_periodic(QuadraticSurd::square_root(7))};
    std::size_t checks = 0;
    for (const QuadraticSurd& a : alphas)
        for (int t = 2; t <= 200; ++t) {
            QuotientBoundsReport rep = check_quotient_bounds(a, t);
            if (rep.max_quotient > rep.bound || rep.max_period_quotient < rep.floor_t_alpha) {
                std::ostringstream os;
                os << "bound violated for t = " << t << ", alpha = " << a.to_string();
                return {false, os.str()};
            }
            ++checks;
        }
    std::ostringstream os;
    os << checks << " scaled expansions within t*(A+2), each period reaching floor(t*alpha)";
    return {true, os.str()};
}

/* ----- 3: exhaustive Markov scan against the certified floor ----- */

Outcome markov_floor() {
    Rational tol = rational_from_string("1e-12");
    MarkovScan scan = markov_bruteforce(QuadraticSurd::square_root(2), 10000, tol);
    QuadExt expect(Rational(6), Rational(-4), 2);  // 6 - 4 sqrt(2) at q = 2
    if (scan.q_star != 2) return {false, "minimum found at q = " + scan.q_star.str()};
    if (scan.exact.compare(expect) != 0)
        return {false, "minimum is not 6 - 4 sqrt(2)"};
    if (scan.exact.compare(scan.value.lo()) < 0 || scan.exact.compare(scan.value.hi()) > 0)
        return {false, "enclosure misses the exact minimum"};
    if (scan.value.width() > 2 * tol)
        return {false, "enclosure wider than tolerance: " + scan.value.to_string()};
    Rational floor_bound = markov_lower_bound(QuadraticSurd::square_root(2));
    if (floor_bound != Rational(1, 4)) return {false, "floor is not 1/4"};
    if (!(floor_bound <= scan.value.lo()))
        return {false, "floor exceeds the scanned minimum"};
    return {true, "q <= 10000 scan: minimum 6 - 4 sqrt(2) at q = 2, above the 1/4 floor, "
                  "enclosed at 1e-12"};
}

/* ----- 4a: quadrature reproduces the series value of the log mean ----- */

Outcome gauss_mean_quadrature() {
    RationalInterval quad = gauss_kuzmin_log_integral(rational_from_string("1e-6"));
    RationalInterval series = gauss_log_mean(rational_from_string("1e-9"));
    if (!quad.contains(series))
        return {false, "quadrature " + quad.to_string() + " does not contain the series value " +
                           series.to_string()};
    return {true, "independent quadrature " + quad.to_string() + " contains the series value"};
}

/* ----- 4b: the five-digit reference constant (known out of reach) ----- */

Outcome gauss_mean_printed_value() {
    RationalInterval quad = gauss_kuzmin_log_integral(rational_from_string("1e-6"));
    Rational target = rational_from_string("1.18567");
    Rational dist = quad.mid() - target;
    if (dist < 0) dist = -dist;
    std::ostringstream os;
    Float200 d = to_f200(dist);
    os << "|quadrature mid - 1.18567| = " << std::setprecision(3) << d
       << (dist <= rational_from_string("1e-5") ? " <= 1e-5" : " > 1e-5; the mean is 1.18657...");
    return {dist <= rational_from_string("1e-5"), os.str()};
}

/* ----- 5: the certified product stays bounded along the 2-power chain ----- */

Outcome product_boundedness_sweep() {
    SweepResult res = sweep(silver(), PseudoAbsoluteSequence::p_power(2), 1, 12,
                            rational_from_string("1e-12"), 0);
    for (const SweepEntry& e : res.entries)
        if (!e.record)
            return {false, "index " + std::to_string(e.n) + " failed: " + e.error};
    if (res.summary.counted != 11)
        return {false, "expected 11 counted records, got " + std::to_string(res.summary.counted)};
    if (!res.summary.products_positive) return {false, "a certified product touches zero"};
    if (!res.summary.s_membership_ok)
        return {false, "a record leaves the bounded set (q||q alpha|| a_last >= u_n)"};
    if (res.summary.c_hat > 100 || res.summary.c_hat / res.summary.c_lo > 100)
        return {false, "product spread too wide: c_hat = " +
                           rational_to_fraction_string(res.summary.c_hat)};
    RationalInterval p3 = res.entries[2].record->product;
    Rational dist = p3.mid() - rational_from_string("0.2195");
    if (dist < 0) dist = -dist;
    if (dist > rational_from_string("1e-3"))
        return {false, "n = 3 product drifted from 0.2195: " + p3.to_string()};
    std::ostringstream os;
    os << "n = 1..12 certified: products in [" << decimal_lower(res.summary.c_lo, 6) << ", "
       << decimal_upper(res.summary.c_hat, 6) << "], spread "
       << decimal_upper(res.summary.c_hat / res.summary.c_lo, 4) << ", n = 3 near 0.2195";
    return {true, os.str()};
}

/* ----- 6: period lengths track the chain within a narrow band ----- */

Outcome period_ratio_band() {
    SweepResult res = sweep(silver(), PseudoAbsoluteSequence::p_power(2), 4, 12,
                            rational_from_string("1e-9"), 0);
    const std::size_t frozen_l[] = {4, 12, 24, 48, 96, 196, 368, 760, 1524};
    Rational lo_band(1, 2), hi_band(49, 64);
    Rational rmin, rmax;
    bool first = true;
    for (std::size_t i = 0; i < res.entries.size(); ++i) {
        const SweepEntry& e = res.entries[i];
        if (!e.record) return {false, "index " + std::to_string(e.n) + " failed: " + e.error};
        if (e.record->l != frozen_l[i]) {
            std::ostringstream os;
            os << "period length changed at n = " << e.n << ": got " << e.record->l
               << ", frozen value " << frozen_l[i];
            return {false, os.str()};
        }
        Rational ratio(Integer(e.record->l), e.record->u_n);
        if (ratio < lo_band || ratio > hi_band) {
            std::ostringstream os;
            os << "l/u = " << rational_to_fraction_string(ratio) << " at n = " << e.n
               << " leaves [1/2, 49/64]";
            return {false, os.str()};
        }
        if (first || ratio < rmin) rmin = ratio;
        if (first || ratio > rmax) rmax = ratio;
        first = false;
    }
    if (rmax / rmin > 10)
        return {false, "band ratio " + rational_to_fraction_string(rmax / rmin) + " exceeds 10"};
    std::ostringstream os;
    os << "n = 4..12 period lengths match the frozen table, l/u in ["
       << rational_to_fraction_string(rmin) << ", " << rational_to_fraction_string(rmax) << "]";
    return {true, os.str()};
}

/* ----- 7: Birkhoff averages drift monotonically toward the Gauss mean ----- */

Outcome birkhoff_drift() {
    PseudoAbsoluteSequence seq = PseudoAbsoluteSequence::p_power(2);
    Rational tol = rational_from_string("1e-9");
    bool gated = false;
    try {
        period_statistics(silver(), seq, 2, Rational(25, 64), tol);
    } catch (const HypothesisViolationError&) {
        gated = true;
    }
    if (!gated) return {false, "u = 2 slipped past the Markov threshold"};
    std::vector<Rational> dev;
    for (std::size_t n = 3; n <= 12; ++n) {
        PeriodStats st = period_statistics(silver(), seq, n, Rational(25, 64), tol);
        if (!st.ub_ok || !st.lb_ok || !st.sandwich_ok) {
            std::ostringstream os;
            os << "inequality margin failed at n = " << n;
            return {false, os.str()};
        }
        Rational d = st.gamma_dev.mid();
        dev.push_back(d < 0 ? -d : d);
    }
    int drops = 0;
    for (std::size_t i = 2; i < dev.size(); ++i)  // transitions within n = 4..12
        if (dev[i] < dev[i - 1]) ++drops;
    std::ostringstream os;
    os << "|birkhoff - gamma| fell in " << drops << "/8 transitions past n = 4; "
       << "all period inequalities certified, u = 2 correctly rejected";
    if (drops < 7) {
        os.str("");
        os << "|birkhoff - gamma| fell in only " << drops << "/8 transitions past n = 4";
        return {false, os.str()};
    }
    return {true, os.str()};
}

/* ----- 8: thread determinism and randomized interval containment ----- */

Outcome determinism_and_fuzz() {
    PseudoAbsoluteSequence seq = PseudoAbsoluteSequence::p_power(2);
    Rational tol = rational_from_string("1e-12");
    std::string base = sweep_to_jsonl(sweep(silver(), seq, 1, 10, tol, 1));
    for (unsigned threads : {4u, 8u}) {
        if (sweep_to_jsonl(sweep(silver(), seq, 1, 10, tol, threads)) != base) {
            return {false, "jsonl differs at " + std::to_string(threads) + " threads"};
        }
    }

    std::mt19937 rng(20260819u);
    std::uniform_int_distribution<int> num(-2000, 2000);
    std::uniform_int_distribution<int> den(1, 1000);
    std::uniform_int_distribution<int> op(0, 4);
    Rational enc_tol = rational_from_string("1e-40");
    Float200 slack("1e-100");
    std::size_t ops = 0;
    const std::size_t target_ops = 10000;
    while (ops < target_ops) {
        Rational start(num(rng), den(rng));
        RationalInterval iv = RationalInterval::exact(start);
        Float200 w = to_f200(start);
        for (int step = 0; step < 20 && ops < target_ops; ++step) {
            switch (op(rng)) {
                case 0: {
                    Rational s(num(rng), den(rng));
                    iv = iv + s;
                    w += to_f200(s);
                    break;
                }
                case 1: {
                    Rational s(num(rng), Integer(1000) * den(rng));
                    iv = iv * s;
                    w *= to_f200(s);
                    break;
                }
                case 2: {
                    if (iv.lo() <= Rational(-1, 2)) continue;
                    iv = log_enclosure(iv + Rational(1), enc_tol);
                    w = log(1 + w);
                    break;
                }
                case 3: {
                    if (iv.lo() < -8 || iv.hi() > 8) continue;
                    iv = exp_enclosure(iv, enc_tol);
                    w = exp(w);
                    break;
                }
                default: {
                    if (iv.contains_zero() || iv.abs().lo() < Rational(1, 1000))
                        continue;
                    iv = iv.reciprocal();
                    w = 1 / w;
                    break;
                }
            }
            iv = iv.rounded_out(600);
            ++ops;
            if (!contains_value(iv, w, slack)) {
                std::ostringstream os;
                os << "containment lost after " << ops << " operations: " << iv.to_string();
                return {false, os.str()};
            }
        }
    }
    std::ostringstream os;
    os << "sweep jsonl byte-identical at 1/4/8 threads; " << target_ops
       << " random interval compositions kept the 200-digit oracle inside";
    return {true, os.str()};
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"expansion-oracle", false, expansion_oracle},
        {"scaled-quotient-bounds", false, scaled_quotient_bounds},
        {"markov-floor", false, markov_floor},
        {"gauss-mean-quadrature", false, gauss_mean_quadrature},
        {"gauss-mean-printed-value", true, gauss_mean_printed_value},
        {"product-boundedness-sweep", false, product_boundedness_sweep},
        {"period-ratio-band", false, period_ratio_band},
        {"birkhoff-drift", false, birkhoff_drift},
        {"determinism-and-fuzz", false, determinism_and_fuzz},
    };
    int bad = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string tag;
        if (out.pass && !c.expected_fail) {
            tag = "PASS";
        } else if (!out.pass && c.expected_fail) {
            tag = "EXPECTED-FAIL";
        } else if (out.pass && c.expected_fail) {
            tag = "UNEXPECTED-PASS";
            ++bad;
        } else {
            tag = "FAIL";
            ++bad;
        }
        std::cout << "[" << tag << "] " << c.name << ": " << out.detail << " ("
                  << fmt_seconds(secs) << ")" << std::endl;
    }
    if (bad) {
        std::cout << bad << " criteria off expectation" << std::endl;
        return 1;
    }
    std::cout << "gate clean: 8 required criteria hold, 1 known-out-of-reach target still fails"
              << std::endl;
    return 0;
}
