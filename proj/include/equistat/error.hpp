#pragma once

#include <stdexcept>
#include <string>

namespace equistat {

// Malformed or invariant-violating input. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation precondition not met by an otherwise well-formed instance.
class DomainError : public InputError {
public:
    using InputError::InputError;
};

// No solution exists for a well-posed problem (e.g. infeasible flow balance).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A solver stopped without a verdict. Maps to CLI exit code 3.
class Inconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace equistat
