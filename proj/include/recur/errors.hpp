#pragma once

#include <stdexcept>
#include <string>

namespace recur {

// Index outside the domain of an operation (negative fib index, n < 2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Backward step needs division by c_d with |c_d| != 1 outside rational mode,
// or produced a non-integral value.
class NonInvertibleStep : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InsufficientData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace recur
