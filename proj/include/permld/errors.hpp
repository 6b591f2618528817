#pragma once

#include <stdexcept>
#include <string>

namespace permld {

// Error taxonomy shared across the library. Each maps to one failure mode
// of the public API; all derive from std:: exceptions so callers can catch
// coarsely or precisely.

struct NotABijection : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SizeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidCycleType : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownStatistic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IncompatibleExponents : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace permld
