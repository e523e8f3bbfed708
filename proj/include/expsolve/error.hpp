#ifndef EXPSOLVE_ERROR_HPP
#define EXPSOLVE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace expsolve {

// Base of everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact and approximate scalars mixed in one operation, or polynomial
// variables mismatched.
struct mode_error : error {
    using error::error;
};

// Malformed scalar text or problem/solution document.
struct parse_error : error {
    using error::error;
};

// Request outside the constructive pipeline (gamma > 0 transform/solve,
// non-rational frequencies, ...).
struct unsupported_error : error {
    using error::error;
};

// Numeric iteration failed to converge, or an approximate merge was
// ambiguous.
struct numeric_error : error {
    using error::error;
};

// A degree candidate exceeded the configured cap.
struct cap_error : error {
    using error::error;
};

// A computed result failed its own verification; indicates a bug, never
// silently swallowed.
struct internal_error : error {
    using error::error;
};

} // namespace expsolve

#endif
