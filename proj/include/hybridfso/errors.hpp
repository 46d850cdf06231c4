#ifndef HYBRIDFSO_ERRORS_HPP
#define HYBRIDFSO_ERRORS_HPP

#include <cassert>
#include <stdexcept>
#include <string>

namespace hybridfso {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A special-function evaluation failed to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter combination that an evaluator deliberately does not support.
class UnsupportedParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested target cannot be reached on the search interval.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw DomainError(what);
    }
}

// Evaluation errors larger than this are defects, not rounding.
inline constexpr double kProbabilitySlack = 1e-9;

inline double clamp_probability(double p)
{
    assert(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack);
    if (p < 0.0) {
        return 0.0;
    }
    if (p > 1.0) {
        return 1.0;
    }
    return p;
}

} // namespace detail
} // namespace hybridfso

#endif // HYBRIDFSO_ERRORS_HPP
