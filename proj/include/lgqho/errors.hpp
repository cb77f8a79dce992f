#pragma once

#include <stdexcept>
#include <string>

namespace lgqho {

// Bad input: out-of-range parameters, malformed schedules, invalid Gram data.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not meet its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Evaluation requested at a point where the propagator is singular (sin θ = 0).
class SingularityError : public NumericError {
public:
    using NumericError::NumericError;
};

// A dataset could not be written or read; the message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lgqho
