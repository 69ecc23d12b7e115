#ifndef SURDLAB_CF_HPP
#define SURDLAB_CF_HPP

#include <cstddef>
#include <vector>

#include "surdlab/surd.hpp"

namespace surdlab {

// One complete-quotient state of the expansion; the pair (P, Q) determines the
// whole future of the recurrence, so repetition of it defines the period.
struct CfState {
    Integer P, Q;
    bool operator==(const CfState& o) const { return P == o.P && Q == o.Q; }
};

/*
 * Eventually periodic continued fraction [a_0; ..., a_{m-1}, overline(period)].
 *
 * Normal form: the preperiod always holds at least a_0 (m >= 1).  When the
 * input is purely periodic (its very first state recurs), the stored period is
 * the cycle rotated left once, so that the stream a_0, a_1, a_2, ... is
 * unchanged and the period's last element is the cycle's head; the
 * purely_periodic flag records that the effective preperiod is empty.  The
 * period length l is always the minimal state-cycle length.
 *
 * states[i] holds the complete-quotient state at stream index i for
 * 0 <= i < m + l, against the radicand D of the (canonicalized) input.
 */
struct PeriodicCF {
    std::vector<Integer> preperiod;       // a_0 .. a_{m-1}
    std::vector<Integer> period;          // a_m .. a_{m+l-1}, repeats forever
    std::vector<CfState> states;          // aligned with stream indices
    Integer D = 0;                        // radicand of the expanded surd
    bool purely_periodic = false;

    std::size_t m() const { return preperiod.size(); }
    std::size_t l() const { return period.size(); }
    // Partial quotient a_i of the infinite stream (period unrolled).
    const Integer& quotient(std::size_t i) const;
    // First `count` partial quotients.
    std::vector<Integer> stream(std::size_t count) const;
    // Complete quotient [a_i; a_{i+1}, ...] as an exact surd, any i.
    QuadraticSurd complete_quotient(std::size_t i) const;
    // Largest partial quotient over preperiod and period.
    Integer max_quotient() const;
    std::string to_string() const;
};

/*
 * Full expansion of a quadratic surd.  Runs the integer PQa recurrence
 *   a_k = floor((P_k + sqrt(D))/Q_k),  P_{k+1} = a_k Q_k - P_k,
 *   Q_{k+1} = (D - P_{k+1}^2)/Q_k
 * and detects the period as the first repeated (P, Q) state via a hash table,
 * which yields the minimal preperiod and minimal period in one pass.  Never
 * keys on the partial quotients themselves; equal quotient windows can occur
 * long before the state actually cycles.
 */
PeriodicCF expand(const QuadraticSurd& x);

// Follows the expansion of x to its first reduced complete quotient and
// returns that surd; its expansion is purely periodic.
QuadraticSurd reduce_to_purely_periodic(const QuadraticSurd& x);

/*
 * Convergent table p_k/r_k for k = 0..upto of the stream of cf:
 *   r_0 = 1, r_1 = a_1, r_k = a_k r_{k-1} + r_{k-2}   (same shape for p_k,
 *   seeded p_0 = a_0, p_1 = a_1 a_0 + 1).
 * Checked identity: p_k r_{k-1} - p_{k-1} r_k = (-1)^{k-1}.
 */
struct ConvergentTable {
    std::vector<Integer> p, r;
    std::size_t size() const { return r.size(); }
};

ConvergentTable convergents(const PeriodicCF& cf, std::size_t upto);

// |r_k x - p_k| exactly, together with a certified enclosure of width <= tol.
// Equals ||r_k x|| precisely when the value is below 1/2, which the flag
// reports (decided exactly).
struct ApproxError {
    QuadExt exact;
    RationalInterval enclosure;
    bool is_nearest_distance;
};

ApproxError exact_error(const QuadraticSurd& x, const PeriodicCF& cf,
                        const ConvergentTable& table, std::size_t k,
                        const Rational& tol);
// Convenience overload that expands and builds the table itself.
ApproxError exact_error(const QuadraticSurd& x, std::size_t k, const Rational& tol);

/*
 * The l cyclic shifts x_i = [0; overline(a_{m+i-1}, ...)] of the period,
 * i = 1..l, each solved exactly: the rotated period word's convergent matrix
 * gives the fixed-point quadratic, whose positive root is the purely periodic
 * value y_i > 1, and x_i = 1/y_i lies in (0, 1).  Each x_i also equals the
 * reciprocal of the matching complete quotient, which is how the statistics
 * layer evaluates them; the two routes are cross-checked in the tests.
 */
std::vector<QuadraticSurd> shifts(const PeriodicCF& cf);

// Evaluates the continued fraction back to its exact value (periodic tail via
// the fixed point, then the preperiod Moebius map).  Test oracle for expand.
QuadExt evaluate(const PeriodicCF& cf);

// Exact value of the purely periodic continued fraction [overline(word)] for
// a nonempty word of positive quotients: the attracting fixed point of the
// word's convergent matrix.  The result is > 1 and reduced.
QuadraticSurd periodic_word_value(const std::vector<Integer>& word);

// Recomputes the state orbit and verifies minimality of preperiod and period;
// throws AssertionFailureError on any defect.  Used by selftest and tests.
void verify_cycle_minimality(const QuadraticSurd& x, const PeriodicCF& cf);

}  // namespace surdlab

#endif
