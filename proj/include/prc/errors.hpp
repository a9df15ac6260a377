#pragma once
#include <stdexcept>
#include <string>

namespace prc {

// Base for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed expression or spec file. Carries a byte offset into the source.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

// Evaluation left the analytic domain (ln/sqrt of non-positive value,
// division by zero, non-integer power of a non-positive base).
struct DomainError : Error {
    using Error::Error;
};

// Point rejected: metric not positive definite or ||beta|| >= 1 there.
struct AdmissibilityError : Error {
    using Error::Error;
};

} // namespace prc
