#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

/// Raised when a caller violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal mathematical invariant fails. Always a bug, or a
/// counterexample to a theorem; the CLI maps it to exit code 2.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when an exact computation would exceed the configured degree guard.
class DegreeGuardExceeded : public std::runtime_error {
public:
    DegreeGuardExceeded(long long predicted, long long guard)
        : std::runtime_error("degree guard exceeded: predicted degree " + std::to_string(predicted) +
                             " > guard " + std::to_string(guard)),
          predicted_(predicted) {}

    long long predicted() const noexcept { return predicted_; }

private:
    long long predicted_;
};

} // namespace drinfeld
