#ifndef RUMOR_ERRORS_HPP
#define RUMOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rumor {

// Bad user-supplied data: malformed files, invalid snapshots, out-of-range
// arguments.  Maps to CLI exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature / special-function failure.  Maps to CLI exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rumor

#endif
