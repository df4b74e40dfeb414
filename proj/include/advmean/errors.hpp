#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advmean {

// Argument outside the mathematical domain of an operation (t >= 1, lambda > 1, s == 0, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Caller-side precondition not met (e.g. mean_shift on an uncentered distribution).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Input for which the construction is vacuous or undefined: single-atom p,
// zero-mass measure, point-mass trimmed core in the small-shift case.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameters outside the small-(delta, log(1/delta)/n) regime where the
// construction's guarantees are asserted.
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientSamplesError : public std::invalid_argument {
public:
    InsufficientSamplesError(std::size_t have, std::size_t groups)
        : std::invalid_argument("median-of-means needs at least " + std::to_string(groups) +
                                " samples, got " + std::to_string(have)),
          groups_(groups) {}

    std::size_t groups() const noexcept { return groups_; }

private:
    std::size_t groups_;
};

// Malformed distribution file or report input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace advmean
