#pragma once

#include <stdexcept>
#include <string>

namespace qmap {

/// Process exit codes of the command line tool.
enum class ExitCode : int {
    Ok = 0,
    Failure = 1,
    Config = 2,
    Integrity = 3,
    Unbounded = 4,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const { return ExitCode::Failure; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::Config; }
};

/// A self-check of the pipeline failed: nonzero remainder in the division by
/// Delta, a lost (anti-)invariance, a denominator that is not a power of z.
class IntegrityError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::Integrity; }
};

class DivisionByZero : public IntegrityError {
public:
    using IntegrityError::IntegrityError;
};

/// Requested inverse of C(beta, xi) whose c_1 prefactor is not a unit.
class NonUnitInverse : public IntegrityError {
public:
    using IntegrityError::IntegrityError;
};

class UnboundedEnumeration : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::Unbounded; }
};

}  // namespace qmap
