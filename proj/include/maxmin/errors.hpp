#pragma once

#include <stdexcept>
#include <string>

namespace maxmin {

// Error taxonomy shared by the library and the CLI exit-code mapping.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, malformed input files, out-of-range parameters.
struct UsageError : Error {
    using Error::Error;
};

// Violated preconditions on otherwise well-formed data (index out of
// range, item not in set, mismatched ground sets).
struct DomainError : Error {
    using Error::Error;
};

// A requested combination the solver does not support.
struct UnsupportedError : Error {
    using Error::Error;
};

// An enumeration or table exceeded its configured budget. Carries the
// name of the bound that tripped.
struct ResourceError : Error {
    std::string bound;
    ResourceError(const std::string& what, std::string bound_name)
        : Error(what), bound(std::move(bound_name)) {}
};

// A constructed certificate or witness failed exact re-verification.
struct VerificationError : Error {
    std::string witness;
    explicit VerificationError(const std::string& what, std::string witness_desc = "")
        : Error(what), witness(std::move(witness_desc)) {}
};

}  // namespace maxmin
