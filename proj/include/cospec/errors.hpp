#pragma once

#include <stdexcept>
#include <string>

namespace cospec {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed graph6 input. `position` is the byte offset of the offending
// character, or -1 when the problem is not tied to a single byte.
struct G6ParseError : Error {
    G6ParseError(const std::string& msg, long position = -1)
        : Error(position >= 0 ? msg + " (byte " + std::to_string(position) + ")" : msg),
          position(position) {}
    long position;
};

struct MatrixFormatError : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct OrderMismatch : Error {
    using Error::Error;
};

struct NotControllable : Error {
    using Error::Error;
};

// A guaranteed identity (orthogonality, regularity, conjugation, parity of
// M(G)e, ...) failed to hold. Indicates bad input where the caller promised
// otherwise, or an arithmetic bug.
struct VerificationFailed : Error {
    using Error::Error;
};

struct NotInFn : Error {
    using Error::Error;
};

struct IncompleteFactorization : Error {
    using Error::Error;
};

// A proved theorem was observed to fail on concrete data. Carries enough
// context to reproduce the offending instance.
struct ContradictionReport : Error {
    using Error::Error;
};

} // namespace cospec
