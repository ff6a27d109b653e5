#pragma once

#include <stdexcept>
#include <string>

namespace relia {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration: bad scheme codebooks, bad run parameters, bad
/// sweep config files. The data itself may be fine.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or unusable input data (CSV rows, store lines, mismatched
/// panels). Messages name the offending line or key where known.
class DataError : public Error {
public:
    using Error::Error;
};

/// Input is structurally valid but degenerate for the requested
/// computation (e.g. fewer than two non-constant item columns).
class DegenerateInput : public DataError {
public:
    using DataError::DataError;
};

/// Numerical failure: non-finite inputs, non-convergent iterations.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A reliability coefficient whose defining ratio has a zero denominator.
class UndefinedReliability : public NumericError {
public:
    using NumericError::NumericError;
};

/// Transport-level failure talking to a judge backend.
class BackendError : public Error {
public:
    using Error::Error;
};

}  // namespace relia
