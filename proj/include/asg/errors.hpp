#pragma once

#include <stdexcept>
#include <string>

namespace asg {

/// Malformed or out-of-domain input (unknown identifier, bad syntax, ...).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A promise of the decision problem does not hold (S not closed, R not
/// suffix-closed, unbounded activity, ...).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configured resource cap was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace asg
