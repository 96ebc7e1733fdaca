#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace airylab {

/// Thrown when an input violates an operation's precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation produces NaN/Inf or overflows.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A time stepper produced a non-finite state.
class SolverBreakdown : public NumericalError {
public:
    SolverBreakdown(const std::string& what, std::size_t step, double time)
        : NumericalError(what), step_(step), time_(time) {}

    std::size_t step() const noexcept { return step_; }
    double time() const noexcept { return time_; }

private:
    std::size_t step_;
    double time_;
};

}  // namespace airylab
