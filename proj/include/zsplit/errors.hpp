#pragma once

#include <stdexcept>
#include <string>

namespace zsplit {

/// Operand dimensions are incompatible (non-square, mismatched sizes).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation left the representable range (overflow, NaN/Inf).
class NumericRangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Argument outside the domain of an operation (negative step, query outside interval, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Zassenhaus order outside the supported range, or an order that failed certification.
class UnsupportedOrderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Model parameters violate the model's invariants.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Harness configuration could not be parsed or is inconsistent.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace zsplit
