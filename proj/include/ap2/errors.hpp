// Error types shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace ap2 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inversion or normalization attempted on a zero divisor.
struct DivisorError : Error {
    using Error::Error;
};

/// A 2x2 matrix does not match the representation shape of the requested algebra.
struct RepresentationError : Error {
    using Error::Error;
};

/// Structurally meaningless input (zero matrix, zero polynomial, ...).
struct DegenerateInput : Error {
    using Error::Error;
};

/// A sample point where the generic-position assumptions fail.
struct DegenerateSample : Error {
    using Error::Error;
};

/// A precondition stated in an operation contract was violated.
struct ContractViolation : Error {
    using Error::Error;
};

}  // namespace ap2
