#pragma once

#include <stdexcept>
#include <string>

namespace kcharge {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different model spaces.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// A construction the catalog does not cover (non-catalog product, map or
/// embedding outside the supported kinds).
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Arguments violate an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Seeing one is a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace kcharge
