#include "surdlab/lab.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "surdlab/enclosures.hpp"
#include "surdlab/errors.hpp"

namespace surdlab {

Rational markov_lower_bound(const QuadraticSurd& alpha) {
    return Rational(1, expand(alpha).max_quotient() + 2);
}

MarkovScan markov_bruteforce(const QuadraticSurd& alpha, const Integer& qmax,
                             const Rational& tol) {
    if (qmax < 1) throw NonPositiveInputError("qmax must be at least 1");
    QuadExt val = alpha.value();
    MarkovScan best;
    for (Integer q = 1; q <= qmax; ++q) {
        QuadExt dist = (val * Rational(q)).nearest().second;
        QuadExt weighted = dist * Rational(q);
        if (best.q_star == 0 || weighted.compare(best.exact) < 0) {
            best.q_star = q;
            best.exact = weighted;
        }
    }
    best.value = best.exact.enclosure(tol);
    return best;
}

QuotientBoundsReport check_quotient_bounds(const QuadraticSurd& alpha, const Integer& t) {
    if (t < 2) throw NonPositiveInputError("scaling factor must be at least 2");
    QuotientBoundsReport rep;
    rep.t = t;
    Integer A = expand(alpha).max_quotient();
    rep.bound = t * (A + 2);
    QuadraticSurd talpha = alpha.scaled(t);
    PeriodicCF cf = expand(talpha);
    rep.max_quotient = cf.max_quotient();
    rep.max_period_quotient = cf.period.front();
    for (const Integer& a : cf.period)
        rep.max_period_quotient = std::max(rep.max_period_quotient, a);
    rep.floor_t_alpha = talpha.floor();
    rep.period_length = cf.l();
    if (rep.max_quotient > rep.bound) {
        std::ostringstream os;
        os << "quotient bound violated for t=" << t << ": " << rep.max_quotient.str()
           << " > " << rep.bound.str() << " at " << talpha.to_string();
        throw AssertionFailureError(os.str());
    }
    if (rep.max_period_quotient < rep.floor_t_alpha) {
        std::ostringstream os;
        os << "period maximum " << rep.max_period_quotient.str() << " below floor(t*alpha)="
           << rep.floor_t_alpha.str() << " for t=" << t;
        throw AssertionFailureError(os.str());
    }
    return rep;
}

namespace {

// Bit length of q > 0; cheap upper bound for log q used in width budgeting.
unsigned bit_length(const Integer& q) {
    return q <= 1 ? 1u : static_cast<unsigned>(boost::multiprecision::msb(q)) + 1;
}

}  // namespace

LittlewoodRecord build_record(const QuadraticSurd& alpha,
                              const PseudoAbsoluteSequence& seq, std::size_t n,
                              const Rational& tol) {
    if (tol <= 0) throw NonPositiveInputError("record tolerance must be positive");
    LittlewoodRecord rec;
    rec.n = n;
    rec.u_n = seq.term(n);
    rec.baseline = rec.u_n == 1;
    QuadraticSurd beta = rec.baseline ? alpha : alpha.scaled(rec.u_n);
    PeriodicCF cf = expand(beta);
    rec.m = cf.m();
    rec.l = cf.l();
    rec.a_last = cf.period.back();
    if (cf.purely_periodic && cf.l() == 1 && !rec.baseline) {
        std::ostringstream os;
        os << "u_" << n << " * alpha = " << beta.to_string()
           << " has a one-term purely periodic expansion; no distinguished "
              "convergent before the cycle closes";
        throw DegeneratePeriodError(os.str());
    }
    rec.j_star = rec.m + rec.l - 2;

    ConvergentTable table = convergents(cf, rec.j_star);
    rec.r = table.r[rec.j_star];
    rec.q = rec.u_n * rec.r;
    rec.val = seq.value(rec.q);

    // Width budgeting: q*err*val <= 1/a_last <= 1 (convergent bound plus
    // u_n | q), so a log-factor tolerance of tol/4 and an error tolerance of
    // tol/(4 q bits(q)) keep the assembled product within tol.
    Rational err_tol = tol / (4 * Rational(rec.q) * bit_length(rec.q));
    ApproxError err = exact_error(beta, cf, table, rec.j_star, err_tol);
    rec.err_exact = err.exact;
    if (err.is_nearest_distance) {
        rec.err = err.enclosure;
    } else {
        // j_star = 0 with a large fractional part: fall back to the true
        // nearest distance so the reported err is still ||q alpha||.
        rec.err = (beta.value() * Rational(rec.r)).nearest().second.enclosure(err_tol);
    }
    rec.log_q = rec.q == 1 ? RationalInterval::exact(Rational(0))
                           : log_enclosure(Rational(rec.q), tol / 4);
    rec.product = rec.err * rec.log_q * (Rational(rec.q) * rec.val);
    rec.qnorm = rec.err * Rational(rec.q);
    rec.core = rec.err * rec.log_q * Rational(rec.r);
    rec.ec3_ratio = rec.err * Rational(rec.r * rec.a_last);
    rec.ec4_ratio = rec.log_q / Rational(rec.a_last);
    RationalInterval log_r = rec.r == 1 ? RationalInterval::exact(Rational(0))
                                        : log_enclosure(Rational(rec.r), tol / 4);
    rec.log_r_over_l = log_r / Rational(static_cast<unsigned long>(rec.l));
    return rec;
}

SweepResult sweep(const QuadraticSurd& alpha, const PseudoAbsoluteSequence& seq,
                  std::size_t n_from, std::size_t n_to, const Rational& tol,
                  unsigned threads) {
    if (n_from == 0) throw Error("chain indices are 1-based");
    SweepResult out;
    if (n_to < n_from) return out;  // empty range, empty summary
    std::size_t count = n_to - n_from + 1;
    out.entries.resize(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t idx = cursor.fetch_add(1);
            if (idx >= count) return;
            SweepEntry& e = out.entries[idx];
            e.n = n_from + idx;
            try {
                e.record = build_record(alpha, seq, e.n, tol);
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepSummary& s = out.summary;
    for (const SweepEntry& e : out.entries) {
        if (!e.record || e.record->baseline) continue;
        const LittlewoodRecord& rec = *e.record;
        if (s.counted == 0) {
            s.c_hat = rec.product.hi();
            s.c_lo = rec.product.lo();
            s.ratio_min = s.ratio_max = Rational(rec.l) / rec.u_n;
            s.s_membership_max = 0;
        } else {
            s.c_hat = std::max(s.c_hat, rec.product.hi());
            s.c_lo = std::min(s.c_lo, rec.product.lo());
            Rational ratio = Rational(rec.l) / rec.u_n;
            s.ratio_min = std::min(s.ratio_min, ratio);
            s.ratio_max = std::max(s.ratio_max, ratio);
        }
        ++s.counted;
        Rational membership = rec.qnorm.hi() * rec.a_last / rec.u_n;
        s.s_membership_max = std::max(s.s_membership_max, membership);
        // Exact membership check q*||q alpha||*a_last < u_n on the field element.
        if (!((rec.err_exact * Rational(rec.q * rec.a_last)).compare(Rational(rec.u_n)) < 0))
            s.s_membership_ok = false;
        if (!(rec.product.lo() > 0)) s.products_positive = false;
    }
    return out;
}

// Decides u > 1/c_alpha exactly, with c_alpha = inf_{q>=1} q*||q alpha|| the
// Markov constant of alpha.  Best approximation restricts the infimum to
// convergent denominators, where for k >= 1
//   r_k * ||r_k alpha|| = 1 / (x_{k+1} + r_{k-1}/r_k),
// so 1/c_alpha is the supremum of those sums together with 1/||alpha|| for
// the block q < r_1.  Within a residue class mod l the ratios r_{k-1}/r_k
// are a Moebius iteration contracting onto the reversed cycle's fixed point
// with strictly shrinking distance, hence the supremum is attained among the
// first few periods' exact sums or approached at one of the l limits
// x_{i+1} + y_i.  Every candidate is a surd, so each test against u is exact.
static bool above_markov_threshold(const QuadraticSurd& alpha, const Integer& u) {
    PeriodicCF cf = expand(alpha);
    QuadExt uval = QuadExt::rational(Rational(u));
    QuadExt dist = alpha.value().nearest().second;
    if (!((uval * dist).compare(Rational(1)) > 0)) return false;
    std::size_t m = cf.m(), l = cf.l();
    std::size_t last = m + 3 * l + 3;
    ConvergentTable table = convergents(cf, last);
    for (std::size_t k = 1; k <= last; ++k) {
        QuadExt sigma = cf.complete_quotient(k + 1).value() +
                        Rational(table.r[k - 1], table.r[k]);
        if (uval.compare(sigma) <= 0) return false;
    }
    std::vector<Integer> window(l);
    for (std::size_t i = 0; i < l; ++i) {
        // Cycle quotients read backwards from stream position m + i.
        for (std::size_t j = 0; j < l; ++j) window[j] = cf.period[(i + l - j) % l];
        QuadExt y = QuadExt::rational(Rational(1)) / periodic_word_value(window).value();
        QuadExt limit = cf.complete_quotient(m + i + 1).value() + y;
        if (uval.compare(limit) <= 0) return false;
    }
    return true;
}

PeriodStats period_statistics(const QuadraticSurd& alpha,
                              const PseudoAbsoluteSequence& seq, std::size_t n,
                              const Rational& delta0, const Rational& tol) {
    if (delta0 < Rational(25, 64) || delta0 > Rational(1, 2))
        throw ConfigError("delta0 must lie in [25/64, 1/2]");
    if (tol <= 0) throw NonPositiveInputError("tolerance must be positive");
    PeriodStats st;
    st.n = n;
    st.u_n = seq.term(n);
    st.kappa = 24 / delta0;
    if (!above_markov_threshold(alpha, st.u_n))
        throw HypothesisViolationError("u_" + std::to_string(n) + " = " + st.u_n.str() +
                                       " does not exceed 1/c_alpha for alpha = " +
                                       alpha.to_string());
    QuadraticSurd beta = alpha.scaled(st.u_n);
    PeriodicCF cf = expand(beta);
    st.l = cf.l();
    std::size_t l = st.l;
    Rational sample_tol = tol / 8;

    st.threshold = rational_pow_enclosure(st.u_n, -delta0 / 12, sample_tol);
    st.delta_ref = rational_pow_enclosure(st.u_n, -delta0 / 24, tol / 4);
    RationalInterval below_value = log_enclosure(Rational(st.u_n), sample_tol) * (delta0 / 12);

    RationalInterval sum = RationalInterval::exact(Rational(0));
    Integer prod_b = 1, prod_b1 = 1;
    for (std::size_t i = 0; i < l; ++i) {
        // Shift x_i = 1 / y_i with y_i the complete quotient at m + i; f on the
        // shift is log y_i above the threshold, the capped constant below.
        QuadraticSurd y = cf.complete_quotient(cf.m() + i);
        const Integer& b = cf.period[i];
        prod_b *= b;
        prod_b1 *= b + 1;

        // Decide x_i >= tau, i.e. y_i * tau <= 1, sharpening both enclosures
        // up to 10 doublings; an unresolved sample contributes the hull of
        // both branches.
        int branch = 0;  // +1 above threshold, -1 below, 0 unresolved
        Rational eps = sample_tol;
        RationalInterval tau = st.threshold;
        RationalInterval y_enc = y.enclosure(eps);
        for (int round = 0; round <= 10; ++round) {
            RationalInterval prod = y_enc * tau;
            if (prod.hi() <= 1) { branch = 1; break; }
            if (prod.lo() > 1) { branch = -1; break; }
            eps /= 16;
            tau = rational_pow_enclosure(st.u_n, -delta0 / 12, eps);
            y_enc = y.enclosure(eps);
        }
        if (branch == 1) {
            sum = sum + log_enclosure(y_enc, sample_tol);
        } else if (branch == -1) {
            sum = sum + below_value;
            ++st.below_threshold;
        } else {
            sum = sum + RationalInterval::hull(log_enclosure(y_enc, sample_tol),
                                               below_value);
            ++st.two_sided;
        }
    }

    Rational inv_l(1, static_cast<unsigned long>(l));
    st.birkhoff = sum * inv_l;
    RationalInterval gamma = gauss_log_mean(tol / 8);
    st.gamma_dev = st.birkhoff - gamma;
    st.gm_log_b = prod_b == 1
                      ? RationalInterval::exact(Rational(0))
                      : log_enclosure(Rational(prod_b), tol * l / 4) * inv_l;
    st.gm_log_b1 = log_enclosure(Rational(prod_b1), tol * l / 4) * inv_l;

    RationalInterval dev_abs = st.gamma_dev.abs();
    st.ub_ok = st.gm_log_b.hi() <= ((gamma + dev_abs) * st.kappa).lo();
    st.lb_ok = st.gm_log_b1.lo() >= (gamma - dev_abs).hi();
    // Exact integer certificates: b_i <= b_i + 1 <= 2 b_i termwise.
    Integer two_l = Integer(1) << l;
    st.sandwich_ok = prod_b <= prod_b1 && prod_b1 <= two_l * prod_b;
    return st;
}

std::vector<CheckResult> run_selftest(bool quick) {
    std::vector<CheckResult> out;
    auto check = [&](const std::string& name, bool ok, std::string detail) {
        out.push_back({name, ok, std::move(detail)});
    };

    try {
        QuadraticSurd sqrt2 = QuadraticSurd::square_root(2);
        PeriodicCF cf = expand(sqrt2);
        bool shape = cf.m() == 1 && cf.l() == 1 && cf.preperiod[0] == 1 &&
                     cf.period[0] == 2 && !cf.purely_periodic;
        verify_cycle_minimality(sqrt2, cf);
        bool round_trip = evaluate(cf) == sqrt2.value();
        check("sqrt2-expansion", shape && round_trip, cf.to_string());
    } catch (const std::exception& ex) {
        check("sqrt2-expansion", false, ex.what());
    }

    try {
        QuadraticSurd a = QuadraticSurd::canonicalize(1, 3, 3);
        QuadraticSurd b = QuadraticSurd::canonicalize(3, 27, 9);
        check("canonical-rescale", a == b && a.same_value(b), a.to_string());
    } catch (const std::exception& ex) {
        check("canonical-rescale", false, ex.what());
    }

    try {
        QuadraticSurd phi = QuadraticSurd::canonicalize(1, 5, 2);
        QuadraticSurd s1 = phi.scaled(2).scaled(3);
        QuadraticSurd s2 = phi.scaled(3).scaled(2);
        QuadraticSurd s3 = phi.scaled(6);
        check("scaling-composes", s1 == s2 && s2 == s3, s3.to_string());
    } catch (const std::exception& ex) {
        check("scaling-composes", false, ex.what());
    }

    try {
        QuadraticSurd one_sqrt2 = QuadraticSurd::canonicalize(1, 2, 1);
        Rational bound = markov_lower_bound(one_sqrt2);
        MarkovScan scan = markov_bruteforce(one_sqrt2, quick ? 200 : 2000,
                                            Rational(1, 1000000));
        bool ok = bound == Rational(1, 4) && scan.value.lo() >= bound &&
                  scan.q_star == 2;
        check("markov-floor", ok, "min at q=" + scan.q_star.str() + ", value " +
                                       scan.value.to_string());
    } catch (const std::exception& ex) {
        check("markov-floor", false, ex.what());
    }

    try {
        RationalInterval two = exp_enclosure(log_enclosure(Rational(2), Rational(1, 1 << 20)),
                                             Rational(1, 1 << 20));
        check("exp-log-roundtrip", two.contains(Rational(2)), two.to_string());
    } catch (const std::exception& ex) {
        check("exp-log-roundtrip", false, ex.what());
    }

    try {
        PseudoAbsoluteSequence rr = PseudoAbsoluteSequence::m_unit_round_robin({2, 3});
        bool ok = rr.term(1) == 1 && rr.term(2) == 2 && rr.term(3) == 6 &&
                  rr.term(4) == 12 && rr.term(5) == 36 && rr.value(24) == Rational(1, 12);
        check("round-robin-chain", ok, rr.describe());
    } catch (const std::exception& ex) {
        check("round-robin-chain", false, ex.what());
    }

    try {
        QuadraticSurd alpha = reduce_to_purely_periodic(QuadraticSurd::square_root(2));
        PseudoAbsoluteSequence seq = PseudoAbsoluteSequence::p_power(2);
        LittlewoodRecord rec = build_record(alpha, seq, 3, Rational(1, 1000000000));
        bool ok = rec.q == 12 && rec.r == 3 && rec.product.lo() > Rational(21, 100) &&
                  rec.product.hi() < Rational(23, 100);
        check("record-u4", ok, rec.product.to_string());
    } catch (const std::exception& ex) {
        check("record-u4", false, ex.what());
    }

    if (!quick) {
        try {
            RationalInterval gamma = gauss_log_mean(Rational(1, 1000000));
            RationalInterval quad = gauss_kuzmin_log_integral(Rational(1, 1000));
            check("gauss-mean-quadrature", quad.intersects(gamma),
                  gamma.to_string() + " vs " + quad.to_string());
        } catch (const std::exception& ex) {
            check("gauss-mean-quadrature", false, ex.what());
        }
    }
    return out;
}

}  // namespace surdlab
