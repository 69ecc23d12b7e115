#ifndef SURDLAB_ERRORS_HPP
#define SURDLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace surdlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Construction of a surd (P + sqrt(D))/Q with square D.
struct PerfectSquareError : Error {
    explicit PerfectSquareError(const std::string& w) : Error(w) {}
};

// Q == 0, or an interval/rational operation that would divide by zero.
struct ZeroDenominatorError : Error {
    explicit ZeroDenominatorError(const std::string& w) : Error(w) {}
};

// Argument outside the domain of a certified function (log of x <= 0, ...).
struct NonPositiveInputError : Error {
    explicit NonPositiveInputError(const std::string& w) : Error(w) {}
};

// A requested interval width was not reached within the iteration budget.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& w) : Error(w) {}
};

// Pseudo-absolute-value sequence whose terms do not form a divisibility chain.
struct InvalidChainError : Error {
    explicit InvalidChainError(const std::string& w) : Error(w) {}
};

// Sequence term with a prime factor outside the declared unit prime set.
struct NotMUnitError : Error {
    explicit NotMUnitError(const std::string& w) : Error(w) {}
};

// Sequence terms not strictly increasing.
struct NotIncreasingError : Error {
    explicit NotIncreasingError(const std::string& w) : Error(w) {}
};

// Expansion whose period degenerates so no distinguished convergent exists.
struct DegeneratePeriodError : Error {
    explicit DegeneratePeriodError(const std::string& w) : Error(w) {}
};

// A record request whose index violates the hypothesis u_n > 1/c_alpha.
struct HypothesisViolationError : Error {
    explicit HypothesisViolationError(const std::string& w) : Error(w) {}
};

// A certified inequality that must hold mathematically failed; carries witnesses.
struct AssertionFailureError : Error {
    explicit AssertionFailureError(const std::string& w) : Error(w) {}
};

// Bad experiment configuration (unknown keys, unparsable values, bad ranges).
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(w) {}
};

// Malformed surd literal; carries the offset of the first bad character.
struct ParseError : Error {
    ParseError(const std::string& w, std::size_t position)
        : Error(w + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

}  // namespace surdlab

#endif
