#pragma once

#include <stdexcept>
#include <string>

namespace xgewfi {

// Error taxonomy mirrored by the CLI exit codes:
//   ConfigError -> 1, DataError -> 2, IoError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed or degenerate data (parse failures, invariant violations).
class DataError : public Error {
public:
    using Error::Error;
};

// Filesystem failures (unreadable input, unwritable output).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace xgewfi
