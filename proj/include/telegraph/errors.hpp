#pragma once

#include <stdexcept>
#include <string>

namespace telegraph {

/// Raised when an argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when two densities that must share a grid do not.
class GridMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Raised when a transport step would exceed the CFL limit.
class CflError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace telegraph
