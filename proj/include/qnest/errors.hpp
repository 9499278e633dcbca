#pragma once

#include <stdexcept>
#include <string>

namespace qnest {

/// Raised when an input violates a documented precondition or invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a file cannot be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qnest
