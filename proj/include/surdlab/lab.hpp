#ifndef SURDLAB_LAB_HPP
#define SURDLAB_LAB_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "surdlab/cf.hpp"
#include "surdlab/pseudo_absolute.hpp"

namespace surdlab {

/*
 * Experiment layer: builds the distinguished approximation denominators
 * q = u_n * r from the expansion of u_n * alpha, certifies the product
 * q * log q * ||q alpha|| * |q|_D, and gathers the period statistics that
 * explain why the product stays bounded.
 */

// Per-index record.  err/product/qnorm are certified enclosures; r and q are
// exact integers; val is the exact rational |q|_D.
struct LittlewoodRecord {
    std::size_t n = 0;
    Integer u_n;
    std::size_t m = 0;        // preperiod length of u_n*alpha (normal form)
    std::size_t l = 0;        // period length
    Integer a_last;           // last partial quotient of the first period instance
    std::size_t j_star = 0;   // distinguished convergent order m + l - 2
    Integer r;                // denominator r_{j_star}
    Integer q;                // u_n * r
    RationalInterval err;     // ||q alpha||
    Rational val;             // |q|_D, exact
    RationalInterval log_q;
    RationalInterval product; // q * log q * ||q alpha|| * |q|_D
    RationalInterval qnorm;   // q * ||q alpha||
    // Reported companions: the u_n-free core r*(log r + log u_n)*||r u_n alpha||,
    // the normalized error r*||r u_n alpha||*a_last (order 1 by the convergent
    // bounds), (log r + log u_n)/a_last, and log r / l.
    RationalInterval core;
    RationalInterval ec3_ratio;
    RationalInterval ec4_ratio;
    RationalInterval log_r_over_l;
    QuadExt err_exact;        // |r*(u_n alpha) - p| as an exact field element
    bool baseline = false;    // u_n == 1 (kept out of the boundedness statistics)
};

// Certified lower bound inf_q q*||q alpha|| >= 1/(A+2), A the largest partial
// quotient of alpha's expansion (preperiod and period included).
Rational markov_lower_bound(const QuadraticSurd& alpha);

// Exhaustive minimum of q*||q alpha|| over 1 <= q <= qmax, decided by exact
// field comparisons; the interval is an enclosure of the minimum at tol.
struct MarkovScan {
    Integer q_star;
    QuadExt exact;
    RationalInterval value;
};
MarkovScan markov_bruteforce(const QuadraticSurd& alpha, const Integer& qmax,
                             const Rational& tol);

/*
 * Exact checks on the expansion of t*alpha for purely periodic alpha and
 * integer t >= 2: every partial quotient is at most t*(A+2), and the largest
 * period element is at least floor(t*alpha).  Integer arithmetic throughout;
 * violations raise AssertionFailureError with the witnesses.
 */
struct QuotientBoundsReport {
    Integer t;
    Integer bound;               // t*(A+2)
    Integer max_quotient;        // over preperiod and period of t*alpha
    Integer max_period_quotient; // over the period only
    Integer floor_t_alpha;
    std::size_t period_length;
};
QuotientBoundsReport check_quotient_bounds(const QuadraticSurd& alpha, const Integer& t);

// Builds the record for index n.  alpha must be purely periodic
// (reduce_to_purely_periodic first).  Throws DegeneratePeriodError when the
// expansion of u_n*alpha has a one-term period with empty effective preperiod
// and u_n > 1; u_n == 1 yields the baseline record with q = r.
LittlewoodRecord build_record(const QuadraticSurd& alpha,
                              const PseudoAbsoluteSequence& seq, std::size_t n,
                              const Rational& tol);

struct SweepEntry {
    std::size_t n = 0;
    std::optional<LittlewoodRecord> record;
    std::string error;  // set when record is absent
};

struct SweepSummary {
    // Extremes of the certified product over non-baseline records.
    Rational c_hat;  // max product.hi
    Rational c_lo;   // min product.lo
    std::size_t counted = 0;   // records entering c_hat/c_lo
    Rational ratio_min, ratio_max;      // l / u_n band over counted records
    Rational s_membership_max;          // max over records of qnorm.hi * a_last / u_n
    bool s_membership_ok = true;        // qnorm < u_n / a_last held exactly everywhere
    bool products_positive = true;      // over counted records
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    SweepSummary summary;
};

// Records for n_from..n_to computed in parallel (threads == 0 picks the
// hardware count); per-n failures become entry errors and the run continues.
// Output is ordered by n and invariant under the thread count.
SweepResult sweep(const QuadraticSurd& alpha, const PseudoAbsoluteSequence& seq,
                  std::size_t n_from, std::size_t n_to, const Rational& tol,
                  unsigned threads);

/*
 * Shift statistics of the period of u_n*alpha against the Gauss measure.
 * With the threshold tau = u_n^(-delta0/12) and
 *   f(x) = log(u_n)*delta0/12  on (0, tau),   f(x) = -log x  on [tau, 1),
 * reports the Birkhoff average (1/l) sum f(x_i) over the period shifts, its
 * deviation from gamma = pi^2/(12 log 2), the reference scale u_n^(-delta0/24),
 * and the geometric means of the partial quotients b_i and b_i + 1 via exact
 * products.  Threshold comparisons refine up to 10 precision doublings; a
 * sample still unresolved is counted for both branches and widens the
 * enclosure (two_sided counts them).
 *
 * Requires u_n above 1/c_alpha, where c_alpha = inf_q q*||q alpha|| is
 * decided exactly: the infimum runs over convergent denominators, each value
 * is a surd, and the tail is dominated by finitely many candidates plus the
 * reversed-cycle limits.  Violations raise HypothesisViolationError.
 */
struct PeriodStats {
    std::size_t n = 0;
    Integer u_n;
    std::size_t l = 0;
    Rational kappa;              // 24/delta0, exact
    RationalInterval threshold;  // u_n^(-delta0/12)
    RationalInterval birkhoff;
    RationalInterval gamma_dev;  // birkhoff - gamma
    RationalInterval delta_ref;  // u_n^(-delta0/24)
    RationalInterval gm_log_b;   // (1/l) sum log b_i
    RationalInterval gm_log_b1;  // (1/l) sum log (b_i + 1)
    std::size_t below_threshold = 0;
    std::size_t two_sided = 0;
    // Reported inequality margins (certified where mathematically exact):
    bool ub_ok = false;   // gm_log_b  <= kappa * (gamma + |gamma_dev|)
    bool lb_ok = false;   // gm_log_b1 >= gamma - |gamma_dev|
    bool sandwich_ok = false;  // gm_log_b <= gm_log_b1 <= gm_log_b + log 2
};

PeriodStats period_statistics(const QuadraticSurd& alpha,
                              const PseudoAbsoluteSequence& seq, std::size_t n,
                              const Rational& delta0, const Rational& tol);

// Small-scale invariant suite shared by the CLI selftest and the tests.
struct CheckResult {
    std::string name;
    bool ok;
    std::string detail;
};
std::vector<CheckResult> run_selftest(bool quick);

}  // namespace surdlab

#endif
