#pragma once

#include <stdexcept>
#include <string>

namespace igbm {

/// Base of every error raised by the library. Messages start with the name
/// of the operation that failed.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (non-finite, wrong sign, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input is well formed but outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class MaxIterations : public Error {
public:
    using Error::Error;
};

class NoRootInInterval : public Error {
public:
    using Error::Error;
};

class BranchError : public Error {
public:
    using Error::Error;
};

class QuadratureNotConverged : public Error {
public:
    using Error::Error;
};

class ShootingFailed : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool ok, const char* op, const std::string& what)
{
    if (!ok) {
        throw InvalidArgument(std::string(op) + ": " + what);
    }
}

} // namespace detail
} // namespace igbm
