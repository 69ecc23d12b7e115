#ifndef SURDLAB_PSEUDO_ABSOLUTE_HPP
#define SURDLAB_PSEUDO_ABSOLUTE_HPP

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "surdlab/numeric.hpp"

namespace surdlab {

/*
 * Pseudo-absolute value over a divisibility chain: an increasing sequence
 *   u_1 = 1,  u_n | u_{n+1},  u_n < u_{n+1},
 * every term a unit over a finite prime set M, defining
 *   |q|_D = 1 / u_{n*}   with n* the largest index such that u_{n*} | q.
 *
 * Three construction kinds:
 *   - p_power(p):          1, p, p^2, ...       (|.|_D is the p-adic absolute
 *                                                value, normalized)
 *   - m_unit(M, schedule): multiply by the primes of M in a round-robin, or
 *                          follow an explicit coordinatewise-nondecreasing
 *                          exponent schedule
 *   - explicit_terms(v):   a finite validated chain
 * Validation is fail-fast: InvalidChainError, NotIncreasingError, NotMUnitError.
 *
 * Terms are generated lazily and memoized; instances are safe to share across
 * threads (the memo is guarded, callers observe a pure function).
 */
class PseudoAbsoluteSequence {
public:
    static PseudoAbsoluteSequence p_power(const Integer& p);
    static PseudoAbsoluteSequence m_unit_round_robin(std::vector<Integer> M);
    static PseudoAbsoluteSequence m_unit_schedule(std::vector<Integer> M,
                                                  std::vector<std::vector<unsigned>> exponents);
    static PseudoAbsoluteSequence explicit_terms(std::vector<Integer> terms);

    // u_n, 1-based.  Throws Error for n == 0 or past the end of a finite chain.
    Integer term(std::size_t n) const;

    // Largest index n with u_n | q (at least 1 since u_1 = 1), for q >= 1.
    std::size_t valuation_index(const Integer& q) const;
    // |q|_D = 1/u_{valuation_index(q)} as an exact rational.
    Rational value(const Integer& q) const;

    // Index count for finite chains, SIZE_MAX for generated ones.
    std::size_t length() const;
    bool is_finite() const { return length() != std::numeric_limits<std::size_t>::max(); }

    const std::vector<Integer>& unit_primes() const;
    std::string describe() const;

private:
    struct Impl;
    explicit PseudoAbsoluteSequence(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace surdlab

#endif
