#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

/// Argument outside the mathematical domain of an operation (e.g. x outside [0,1]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed call: bad sizes, unsupported options, unsupported (formula, mode) pairs.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A hypothesis of a trace formula or recovery procedure is violated by the input.
/// The message names the hypothesis that failed.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Index beyond the trusted range of a computed spectrum.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Non-finite input or an iterative solver that failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input file; the message carries file, line and field.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tracelab
