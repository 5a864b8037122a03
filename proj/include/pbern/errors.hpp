#pragma once

#include <stdexcept>
#include <string>

namespace pbern {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// RationalMode and LambdaMode values combined in one operation.
struct ModeError : Error {
    using Error::Error;
};

struct ZeroDivisionError : Error {
    using Error::Error;
};

// A consumer asked for series coefficients beyond the truncation order.
struct OrderError : Error {
    using Error::Error;
};

// Invalid arguments: bad parameter domains, malformed spec strings, missing inputs.
struct PreconditionError : Error {
    using Error::Error;
};

// Two independent computations of the same quantity disagreed.
// Raised by construction-time cross-checks; indicates a bug, never user error.
struct ConsistencyError : Error {
    using Error::Error;
};

} // namespace pbern
