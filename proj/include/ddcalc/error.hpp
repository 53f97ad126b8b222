#pragma once

#include <stdexcept>
#include <string>

namespace ddcalc {

/// Argument outside the mathematical domain of an operation (non-finite input, q outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation called in a context it does not support (wrong regime, unmet precondition).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters failed validation. what() lists every violation.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature or root finder failed to reach the requested accuracy.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace ddcalc
