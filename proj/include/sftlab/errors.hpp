#pragma once

#include <stdexcept>
#include <string>

namespace sftlab {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Enumeration or memory budget exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition on the input data does not hold.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace sftlab
