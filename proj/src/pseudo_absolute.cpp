#include "surdlab/pseudo_absolute.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "surdlab/errors.hpp"

namespace surdlab {

namespace {

enum class Kind { PPower, RoundRobin, Schedule, Explicit };

void require_prime(const Integer& p) {
    if (p < 2 || !is_prime(p))
        throw NotMUnitError("unit set member " + p.str() + " is not prime");
}

}  // namespace

struct PseudoAbsoluteSequence::Impl {
    Kind kind;
    std::vector<Integer> primes;                    // sorted, unique
    std::vector<std::vector<unsigned>> schedule;    // Kind::Schedule only
    mutable std::vector<Integer> terms;             // memo, terms[0] = u_1 = 1
    mutable std::mutex mu;

    bool finite() const { return kind == Kind::Explicit || kind == Kind::Schedule; }

    std::size_t limit() const {
        if (kind == Kind::Explicit) return terms.size();
        if (kind == Kind::Schedule) return schedule.size();
        return std::numeric_limits<std::size_t>::max();
    }

    // Extends the memo to cover index n (1-based) under the lock.
    void ensure(std::size_t n) const {
        std::lock_guard<std::mutex> lock(mu);
        while (terms.size() < n) {
            std::size_t k = terms.size();  // generating u_{k+1}
            if (kind == Kind::PPower) {
                terms.push_back(terms.back() * primes[0]);
            } else if (kind == Kind::RoundRobin) {
                terms.push_back(terms.back() * primes[(k - 1) % primes.size()]);
            } else {
                Integer u = 1;
                for (std::size_t i = 0; i < primes.size(); ++i)
                    for (unsigned e = 0; e < schedule[k][i]; ++e) u *= primes[i];
                terms.push_back(u);
            }
        }
    }
};

PseudoAbsoluteSequence::PseudoAbsoluteSequence(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

PseudoAbsoluteSequence PseudoAbsoluteSequence::p_power(const Integer& p) {
    require_prime(p);
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::PPower;
    impl->primes = {p};
    impl->terms = {Integer(1)};
    return PseudoAbsoluteSequence(impl);
}

PseudoAbsoluteSequence PseudoAbsoluteSequence::m_unit_round_robin(std::vector<Integer> M) {
    if (M.empty()) throw NotMUnitError("unit prime set must be nonempty");
    std::sort(M.begin(), M.end());
    M.erase(std::unique(M.begin(), M.end()), M.end());
    for (const Integer& p : M) require_prime(p);
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::RoundRobin;
    impl->primes = std::move(M);
    impl->terms = {Integer(1)};
    return PseudoAbsoluteSequence(impl);
}

PseudoAbsoluteSequence PseudoAbsoluteSequence::m_unit_schedule(
    std::vector<Integer> M, std::vector<std::vector<unsigned>> exponents) {
    if (M.empty()) throw NotMUnitError("unit prime set must be nonempty");
    for (const Integer& p : M) require_prime(p);
    for (std::size_t i = 1; i < M.size(); ++i)
        if (M[i] <= M[i - 1]) throw InvalidChainError("unit primes must be strictly sorted");
    if (exponents.empty()) throw InvalidChainError("exponent schedule is empty");
    for (std::size_t k = 0; k < exponents.size(); ++k) {
        if (exponents[k].size() != M.size())
            throw InvalidChainError("schedule row width must match the prime set");
        if (k == 0) {
            for (unsigned e : exponents[0])
                if (e != 0) throw InvalidChainError("chain must start at u_1 = 1");
        } else {
            bool grew = false;
            for (std::size_t i = 0; i < M.size(); ++i) {
                if (exponents[k][i] < exponents[k - 1][i])
                    throw NotIncreasingError("exponent schedule decreases");
                grew = grew || exponents[k][i] > exponents[k - 1][i];
            }
            if (!grew) throw NotIncreasingError("chain must be strictly increasing");
        }
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Schedule;
    impl->primes = std::move(M);
    impl->schedule = std::move(exponents);
    impl->ensure(impl->schedule.size());
    return PseudoAbsoluteSequence(impl);
}

PseudoAbsoluteSequence PseudoAbsoluteSequence::explicit_terms(std::vector<Integer> terms) {
    if (terms.empty() || terms[0] != 1)
        throw InvalidChainError("chain must start at u_1 = 1");
    std::vector<Integer> primes;
    for (std::size_t k = 1; k < terms.size(); ++k) {
        if (terms[k] <= terms[k - 1]) throw NotIncreasingError("chain must be strictly increasing");
        if (terms[k] % terms[k - 1] != 0)
            throw InvalidChainError(terms[k - 1].str() + " does not divide " + terms[k].str());
        Integer ratio = terms[k] / terms[k - 1];
        // Collect the primes of each ratio; small chains, trial division is fine.
        Integer cofactor;
        for (const auto& [p, e] : trial_factor(ratio, 100000, &cofactor))
            primes.push_back(p);
        if (cofactor > 1) {
            if (!is_prime(cofactor))
                throw Error("cannot factor chain ratio " + ratio.str() +
                            " to determine its unit primes");
            primes.push_back(cofactor);
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Explicit;
    impl->primes = std::move(primes);
    impl->terms = std::move(terms);
    return PseudoAbsoluteSequence(impl);
}

Integer PseudoAbsoluteSequence::term(std::size_t n) const {
    if (n == 0) throw Error("chain indices are 1-based");
    if (n > impl_->limit())
        throw Error("chain has only " + std::to_string(impl_->limit()) + " terms");
    impl_->ensure(n);
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->terms[n - 1];
}

std::size_t PseudoAbsoluteSequence::valuation_index(const Integer& q) const {
    if (q < 1) throw NonPositiveInputError("valuation of non-positive " + q.str());
    std::size_t best = 1;
    for (std::size_t n = 2; n <= impl_->limit(); ++n) {
        Integer u = term(n);
        if (u > q || q % u != 0) break;  // chain terms grow, no later divisor
        best = n;
    }
    return best;
}

Rational PseudoAbsoluteSequence::value(const Integer& q) const {
    return Rational(1, term(valuation_index(q)));
}

std::size_t PseudoAbsoluteSequence::length() const { return impl_->limit(); }

const std::vector<Integer>& PseudoAbsoluteSequence::unit_primes() const {
    return impl_->primes;
}

std::string PseudoAbsoluteSequence::describe() const {
    std::ostringstream os;
    switch (impl_->kind) {
        case Kind::PPower:
            os << "powers of " << impl_->primes[0].str();
            break;
        case Kind::RoundRobin: {
            os << "round-robin over {";
            for (std::size_t i = 0; i < impl_->primes.size(); ++i)
                os << (i ? ", " : "") << impl_->primes[i].str();
            os << "}";
            break;
        }
        case Kind::Schedule:
            os << "scheduled chain of length " << impl_->schedule.size();
            break;
        case Kind::Explicit:
            os << "explicit chain of length " << impl_->terms.size();
            break;
    }
    return os.str();
}

}  // namespace surdlab
