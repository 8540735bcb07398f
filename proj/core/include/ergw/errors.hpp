#pragma once

#include <stdexcept>
#include <string>

namespace ergw {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes
// (usage -> 2, resource -> 3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid argument values (N = 0, missing exponent, mismatched table sizes, ...)
struct ParameterError : Error {
    using Error::Error;
};

// a computation would exceed the memory/size budget (sieve too large, band too
// large, convolution window overflow, ...)
struct ResourceError : Error {
    using Error::Error;
};

// input is structurally valid but the quantity is undefined on it (A(n) = 0,
// zero signal, ...)
struct DegenerateInputError : Error {
    using Error::Error;
};

// a caller-stated precondition fails on the actual data (minor-arc point lies
// in a major arc, block condition violated, ...)
struct PreconditionError : Error {
    using Error::Error;
};

// grid resolution insufficient for the requested transform (aliasing detected)
struct ResolutionError : Error {
    using Error::Error;
};

}  // namespace ergw
