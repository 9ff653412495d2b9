#pragma once

#include <stdexcept>
#include <string>

namespace boxdos {

/// Bad input: a precondition on an argument does not hold.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The inputs were valid but the computation could not produce a trustworthy result
/// (non-convergence, overflow, quadrature grid too coarse).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

} // namespace boxdos
